#pragma once

#include <iosfwd>
#include <string>

#include "levyhunt/hunt.hpp"
#include "levyhunt/simulate.hpp"

namespace levyhunt {

// Structured outputs carry a "schema" tag and serialize deterministically
// (sorted keys, shortest round-trip numbers), so identical inputs give
// byte-identical documents.

std::string report_to_json(const HuntReport& rep);
std::string report_to_text(const HuntReport& rep);

std::string kesten_to_json(const KestenResult& res);
std::string kesten_to_text(const KestenResult& res);

std::string hitting_to_json(const HittingEstimate& est, const SimConfig& cfg);
std::string hitting_to_text(const HittingEstimate& est);

std::string simulate_summary_json(const PathEnsemble& ens);
std::string simulate_summary_text(const PathEnsemble& ens);

// delimited dumps: header row, then one record per (path, recorded time)
void write_path_dump(std::ostream& os, const PathEnsemble& ens);
void write_jump_log(std::ostream& os, const PathEnsemble& ens);

}  // namespace levyhunt
