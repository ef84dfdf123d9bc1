#ifndef EXTBWT_EXTBWT_HPP
#define EXTBWT_EXTBWT_HPP

#include "extbwt/alphabet.hpp"
#include "extbwt/error.hpp"
#include "extbwt/ingest.hpp"
#include "extbwt/io_accounting.hpp"
#include "extbwt/merge.hpp"
#include "extbwt/multi_cursor.hpp"
#include "extbwt/partial_bwt.hpp"
#include "extbwt/raw_file.hpp"
#include "extbwt/seq_list.hpp"
#include "extbwt/stats_report.hpp"
#include "extbwt/workspace.hpp"

#endif
