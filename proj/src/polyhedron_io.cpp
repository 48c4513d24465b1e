// Text formats:
//   HREP d m         followed by m rows "a_1 ... a_d b"  (a·x <= b)
//   VREP d m         followed by m rows of d tokens in {0,1}
// '#' starts a comment. A comment of the form "# coords L1 L2 ..." carries
// optional coordinate labels.

#include <fstream>
#include <istream>
#include <ostream>
#include <sstream>

#include "bellpoly/errors.hpp"
#include "bellpoly/polyhedron.hpp"

namespace bellpoly {

namespace {

struct Body {
    std::string kind;
    std::size_t dim = 0;
    std::size_t count = 0;
    std::vector<std::string> labels;
    std::vector<std::vector<std::string>> rows;
};

std::vector<std::string> tokens(const std::string& line) {
    std::istringstream ss(line);
    std::vector<std::string> out;
    for (std::string t; ss >> t;) out.push_back(t);
    return out;
}

Body read_body(std::istream& is, const std::string& expected_kind) {
    Body b;
    bool have_header = false;
    std::size_t line_no = 0;
    for (std::string line; std::getline(is, line);) {
        ++line_no;
        const auto hash = line.find('#');
        if (hash != std::string::npos) {
            auto comment = tokens(line.substr(hash + 1));
            if (!comment.empty() && comment.front() == "coords") {
                b.labels.assign(comment.begin() + 1, comment.end());
            }
            line.resize(hash);
        }
        auto tok = tokens(line);
        if (tok.empty()) continue;
        if (!have_header) {
            if (tok.size() != 3 || tok[0] != expected_kind) {
                throw ParseError("line " + std::to_string(line_no) + ": expected '" + expected_kind + " d m'");
            }
            try {
                b.dim = std::stoul(tok[1]);
                b.count = std::stoul(tok[2]);
            } catch (const std::exception&) {
                throw ParseError("line " + std::to_string(line_no) + ": bad header counts");
            }
            b.kind = tok[0];
            have_header = true;
            continue;
        }
        b.rows.push_back(std::move(tok));
    }
    if (!have_header) throw ParseError("missing " + expected_kind + " header");
    if (b.rows.size() != b.count) {
        throw ParseError(expected_kind + " header announces " + std::to_string(b.count) + " rows, found " +
                         std::to_string(b.rows.size()));
    }
    if (!b.labels.empty() && b.labels.size() != b.dim) throw ParseError("coords comment has wrong label count");
    return b;
}

void write_labels(std::ostream& os, const std::vector<std::string>& labels) {
    if (labels.empty()) return;
    os << "# coords";
    for (const auto& l : labels) os << ' ' << l;
    os << '\n';
}

}  // namespace

void write_hrep(std::ostream& os, const InequalitySystem& sys) {
    const InequalitySystem canon = canonicalize(sys);
    os << "HREP " << canon.dim << ' ' << canon.rows.size() << '\n';
    write_labels(os, canon.labels);
    for (const auto& r : canon.rows) {
        for (const auto& c : r.coeffs) os << c << ' ';
        os << r.bound << '\n';
    }
}

InequalitySystem read_hrep(std::istream& is) {
    Body b = read_body(is, "HREP");
    InequalitySystem sys(b.dim, std::move(b.labels));
    for (const auto& row : b.rows) {
        if (row.size() != b.dim + 1) throw ParseError("HREP row has " + std::to_string(row.size()) + " tokens");
        LinearInequality ineq;
        for (std::size_t i = 0; i < b.dim; ++i) ineq.coeffs.push_back(Rational::parse(row[i]));
        ineq.bound = Rational::parse(row[b.dim]);
        sys.add(std::move(ineq));
    }
    return sys;
}

void write_vrep(std::ostream& os, const VertexSet& v) {
    os << "VREP " << v.dim() << ' ' << v.size() << '\n';
    write_labels(os, v.labels());
    for (const auto& u : v.sorted()) {
        for (std::size_t j = 0; j < u.size(); ++j) os << (j ? " " : "") << static_cast<int>(u[j]);
        os << '\n';
    }
}

VertexSet read_vrep(std::istream& is) {
    Body b = read_body(is, "VREP");
    VertexSet v(b.dim, std::move(b.labels));
    for (const auto& row : b.rows) {
        if (row.size() != b.dim) throw ParseError("VREP row has " + std::to_string(row.size()) + " tokens");
        BinaryPoint p(b.dim);
        for (std::size_t i = 0; i < b.dim; ++i) {
            if (row[i] == "1") p[i] = 1;
            else if (row[i] != "0") throw ParseError("VREP entry '" + row[i] + "' is not 0 or 1");
        }
        try {
            v.add(std::move(p));
        } catch (const std::invalid_argument& e) {
            throw ParseError(e.what());
        }
    }
    return v;
}

InequalitySystem read_hrep_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ParseError("cannot open " + path);
    return read_hrep(in);
}

VertexSet read_vrep_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ParseError("cannot open " + path);
    return read_vrep(in);
}

}  // namespace bellpoly
