#ifndef EXTBWT_ERROR_HPP
#define EXTBWT_ERROR_HPP

#include <stdexcept>
#include <string>

namespace extbwt {

/// Root of every exception thrown by the library.
class error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// File-system failure; the message carries the path.
class io_error : public error {
public:
    using error::error;
};

/// A value does not fit the element width of a list.
class encoding_error : public error {
public:
    using error::error;
};

/// Caller violated a precondition (mismatched widths, lengths, modes).
class contract_error : public error {
public:
    using error::error;
};

/// An interleave encoding references a missing level or exhausts a component.
class malformed_encoding_error : public error {
public:
    using error::error;
};

/// Input validation failures raised by ingestion.
class input_error : public error {
public:
    using error::error;
};

class alphabet_error : public input_error {
public:
    using input_error::input_error;
};

class length_error : public input_error {
public:
    using input_error::input_error;
};

class empty_input_error : public input_error {
public:
    using input_error::input_error;
};

} // namespace extbwt

#endif
