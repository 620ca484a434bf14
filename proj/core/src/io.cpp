#include "specdiv/io.hpp"

#include <json.hpp>

#include <cstdio>
#include <fstream>
#include <ostream>
#include <sstream>

namespace specdiv::io {

namespace {

using nlohmann::json;

std::string read_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw validation_error("cannot open file: " + path);
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

void write_file(const std::string& path, const std::string& text) {
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out) throw validation_error("cannot write file: " + path);
    out << text;
}

[[noreturn]] void parse_fail(const std::string& origin, const std::string& text, size_t byte,
                             const std::string& what) {
    size_t line = 1, col = 1;
    for (size_t i = 0; i < byte && i < text.size(); ++i) {
        if (text[i] == '\n') {
            ++line;
            col = 1;
        } else {
            ++col;
        }
    }
    throw validation_error(origin + ":" + std::to_string(line) + ":" + std::to_string(col) +
                           ": " + what);
}

json parse_json(const std::string& text, const std::string& origin) {
    try {
        return json::parse(text);
    } catch (const json::parse_error& e) {
        parse_fail(origin, text, e.byte > 0 ? e.byte - 1 : 0, e.what());
    }
}

Int json_int(const json& v, const char* what) {
    if (v.is_number_integer()) return Int(static_cast<long>(v.get<long long>()));
    if (v.is_number_unsigned()) return Int(static_cast<unsigned long>(v.get<unsigned long long>()));
    throw validation_error(std::string(what) + " must be a decimal integer (floats rejected)");
}

IMat json_matrix(const json& rows, const char* what) {
    if (!rows.is_array() || rows.empty())
        throw validation_error(std::string(what) + " must be a nonempty array of rows");
    int r = static_cast<int>(rows.size());
    if (!rows[0].is_array())
        throw validation_error(std::string(what) + " rows must be arrays");
    int c = static_cast<int>(rows[0].size());
    IMat m(r, c);
    for (int i = 0; i < r; ++i) {
        if (!rows[i].is_array() || static_cast<int>(rows[i].size()) != c)
            throw validation_error(std::string(what) + " rows must have equal length");
        for (int j = 0; j < c; ++j) m.at(i, j) = json_int(rows[i][j], what);
    }
    return m;
}

IntegralLattice lattice_from_parsed(const json& doc) {
    if (!doc.is_object()) throw validation_error("lattice: document must be an object");
    if (!doc.contains("rank") || !doc.contains("gram"))
        throw validation_error("lattice: missing required keys rank/gram");
    Int rank = json_int(doc["rank"], "rank");
    IMat gram = json_matrix(doc["gram"], "gram");
    if (Int(gram.rows()) != rank || Int(gram.cols()) != rank)
        throw validation_error("lattice: gram shape does not match rank");
    IntegralLattice l(gram);  // symmetry/determinant invariants enforced here
    if (doc.contains("even")) {
        if (!doc["even"].is_boolean()) throw validation_error("lattice: even must be a boolean");
        if (doc["even"].get<bool>() != l.is_even())
            throw validation_error(
                "lattice: even flag contradicts the gram diagonal (even lattice invariant)");
    }
    return l;
}

}  // namespace

IntegralLattice lattice_from_json(const std::string& text, const std::string& origin) {
    return lattice_from_parsed(parse_json(text, origin));
}

IntegralLattice load_lattice(const std::string& path) {
    return lattice_from_json(read_file(path), path);
}

std::string lattice_to_json(const IntegralLattice& l) {
    json rows = json::array();
    for (int i = 0; i < l.rank(); ++i) {
        json row = json::array();
        for (int j = 0; j < l.rank(); ++j) row.push_back(to_long(l.gram().at(i, j)));
        rows.push_back(row);
    }
    json doc;
    doc["rank"] = l.rank();
    doc["gram"] = rows;
    doc["even"] = l.is_even();
    return doc.dump(2) + "\n";
}

void save_lattice(const IntegralLattice& l, const std::string& path) {
    write_file(path, lattice_to_json(l));
}

LatticeChain chain_from_json(const std::string& text, const std::string& origin) {
    json doc = parse_json(text, origin);
    if (!doc.is_object() || !doc.contains("base") || !doc.contains("p") ||
        !doc.contains("levels"))
        throw validation_error("chain: missing required keys base/p/levels");
    LatticeChain chain;
    chain.base = lattice_from_parsed(doc["base"]);
    chain.p = json_int(doc["p"], "p");
    if (!doc["levels"].is_array()) throw validation_error("chain: levels must be an array");
    for (const json& lvl : doc["levels"]) {
        IMat b = json_matrix(lvl, "level basis");
        if (b.rows() != chain.base.rank() || b.cols() != chain.base.rank())
            throw validation_error("chain: level basis shape does not match base rank");
        chain.levels.push_back(b);
    }
    return chain;
}

LatticeChain load_chain(const std::string& path) {
    return chain_from_json(read_file(path), path);
}

std::string chain_to_json(const LatticeChain& chain) {
    json doc;
    doc["base"] = json::parse(lattice_to_json(chain.base));
    doc["p"] = to_long(chain.p);
    json levels = json::array();
    for (const IMat& b : chain.levels) {
        json rows = json::array();
        for (int i = 0; i < b.rows(); ++i) {
            json row = json::array();
            for (int j = 0; j < b.cols(); ++j) row.push_back(to_long(b.at(i, j)));
            rows.push_back(row);
        }
        levels.push_back(rows);
    }
    doc["levels"] = levels;
    return doc.dump(2) + "\n";
}

void save_chain(const LatticeChain& chain, const std::string& path) {
    write_file(path, chain_to_json(chain));
}

std::string format_double(double v) {
    char buf[64];
    std::snprintf(buf, sizeof(buf), "%.15g", v);
    return buf;
}

void write_theta_csv(const ThetaTable& table, std::ostream& os) {
    os << "coset_index,m_numerator,m_denominator,coefficient\n";
    for (const ThetaTable::Entry& e : table.entries())
        os << e.coset << "," << e.m.get_num().get_str() << "," << e.m.get_den().get_str() << ","
           << e.value.get_str() << "\n";
}

void write_derived_csv(const DerivedSeries& series, std::ostream& os) {
    os << "coset_index,m_numerator,m_denominator,coefficient_numerator,coefficient_denominator\n";
    for (const DerivedSeries::Entry& e : series.entries())
        os << e.coset << "," << e.m.get_num().get_str() << "," << e.m.get_den().get_str() << ","
           << e.value.get_num().get_str() << "," << e.value.get_den().get_str() << "\n";
}

void write_multiplicity_csv(const MultiplicitySeries& series, std::ostream& os) {
    os << "m,value,tail_bound,kind\n";
    const char* kind = series.kind == MultiplicityKind::type_ii ? "TypeII" : "TypeIII";
    for (const MultiplicityEntry& e : series.entries)
        os << e.m.get_str() << "," << format_double(e.value) << "," << format_double(e.tail_bound)
           << "," << kind << "\n";
}

void write_bins_csv(const QuadricBinReport& report, std::ostream& os) {
    os << "N,count\n";
    for (size_t i = 0; i < report.bins.size(); ++i)
        os << report.first_bin + static_cast<long>(i) << "," << report.bins[i].get_str() << "\n";
}

void write_vectors_csv(const NormSlice& slice, std::ostream& os) {
    os << "norm";
    for (int i = 0; i < slice.lattice.rank(); ++i) os << ",x" << i;
    os << "\n";
    for (const LatticeVector& v : slice.vectors) {
        os << slice.target_norm.get_num().get_str();
        if (slice.target_norm.get_den() != 1) os << "/" << slice.target_norm.get_den().get_str();
        for (const Int& c : v) os << "," << c.get_str();
        os << "\n";
    }
}

void write_chain_sum_csv(const SumExperimentReport& report, std::ostream& os) {
    os << "X,sum,fit_exponent\n";
    for (size_t i = 0; i < report.x_grid.size(); ++i)
        os << report.x_grid[i].get_str() << "," << report.sums[i].get_str() << ","
           << format_double(report.fitted_exponent) << "\n";
}

void write_minima_csv(const MinimaProfile& profile, std::ostream& os) {
    os << "i,mu_sq_numerator,mu_sq_denominator,a_sq_numerator,a_sq_denominator\n";
    for (size_t i = 0; i < profile.minima_sq.size(); ++i)
        os << i + 1 << "," << profile.minima_sq[i].get_num().get_str() << ","
           << profile.minima_sq[i].get_den().get_str() << ","
           << profile.products_sq[i].get_num().get_str() << ","
           << profile.products_sq[i].get_den().get_str() << "\n";
}

void write_fit_csv(const GrowthFit& fit, double expected, std::ostream& os) {
    os << "slope,residual,expected_exponent\n";
    os << format_double(fit.slope) << "," << format_double(fit.residual) << ","
       << format_double(expected) << "\n";
}

void write_violations_csv(const std::vector<ChainViolation>& violations, std::ostream& os) {
    os << "kind,level\n";
    for (const ChainViolation& v : violations)
        os << to_string(v.kind) << "," << v.level << "\n";
}

}  // namespace specdiv::io
