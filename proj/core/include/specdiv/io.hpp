#pragma once

#include "specdiv/chains.hpp"
#include "specdiv/enumerate.hpp"
#include "specdiv/multiplicity.hpp"
#include "specdiv/reduce.hpp"
#include "specdiv/theta.hpp"

#include <iosfwd>
#include <string>

namespace specdiv::io {

/// Lattice file: {"rank": r, "gram": [[...],...], "even": true}. Gram entries
/// are JSON integers; floats are rejected. Parse errors report line/column.
IntegralLattice load_lattice(const std::string& path);
IntegralLattice lattice_from_json(const std::string& text, const std::string& origin = "<json>");
std::string lattice_to_json(const IntegralLattice& l);
void save_lattice(const IntegralLattice& l, const std::string& path);

/// Chain file: {"base": <lattice>, "p": p, "levels": [[[row],...], ...]}.
LatticeChain load_chain(const std::string& path);
LatticeChain chain_from_json(const std::string& text, const std::string& origin = "<json>");
std::string chain_to_json(const LatticeChain& chain);
void save_chain(const LatticeChain& chain, const std::string& path);

/// Deterministic shortest-roundtrip style formatting used by every report.
std::string format_double(double v);

void write_theta_csv(const ThetaTable& table, std::ostream& os);
void write_derived_csv(const DerivedSeries& series, std::ostream& os);
void write_multiplicity_csv(const MultiplicitySeries& series, std::ostream& os);
void write_bins_csv(const QuadricBinReport& report, std::ostream& os);
void write_vectors_csv(const NormSlice& slice, std::ostream& os);
void write_chain_sum_csv(const SumExperimentReport& report, std::ostream& os);
void write_minima_csv(const MinimaProfile& profile, std::ostream& os);
void write_fit_csv(const GrowthFit& fit, double expected, std::ostream& os);
void write_violations_csv(const std::vector<ChainViolation>& violations, std::ostream& os);

}  // namespace specdiv::io
