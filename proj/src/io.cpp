#include "whitney/io.hpp"

#include <cctype>
#include <cmath>
#include <fstream>
#include <sstream>

namespace whitney {

Json number_to_json(const Rational& q, bool exact_mode) {
    if (exact_mode) return format_rational(q);
    return to_double(q);
}

Rational number_from_json(const Json& j, bool exact_mode) {
    if (j.is_string()) return parse_rational(j.get<std::string>(), exact_mode);
    if (j.is_number_integer()) return Rational(Integer(std::to_string(j.get<long long>())));
    if (j.is_number_float()) {
        if (exact_mode) throw mode_error("exact mode rejects float value " + j.dump());
        return rational_from_double(j.get<double>());
    }
    throw parse_error("expected a number, got " + j.dump());
}

std::string format_polynomial(const Polynomial& f, bool exact_mode) {
    if (f.is_zero()) return "0";
    std::string out;
    for (const auto& [alpha, c] : f.terms()) {
        if (!out.empty()) out += " + ";
        out += exact_mode ? format_rational(c) : format_double17(to_double(c));
        std::string mono;
        for (std::size_t i = 0; i < alpha.size(); ++i) {
            if (alpha[i] == 0) continue;
            if (!mono.empty()) mono += "*";
            mono += "x" + std::to_string(i + 1);
            if (alpha[i] >= 2) mono += "^" + std::to_string(alpha[i]);
        }
        if (!mono.empty()) out += " * " + mono;
    }
    return out;
}

namespace {

struct PolyParser {
    const std::string& s;
    std::size_t pos = 0;
    std::size_t dim;
    bool exact_mode;

    void skip_ws() {
        while (pos < s.size() && std::isspace(static_cast<unsigned char>(s[pos]))) ++pos;
    }
    bool eat(char c) {
        skip_ws();
        if (pos < s.size() && s[pos] == c) {
            ++pos;
            return true;
        }
        return false;
    }
    char peek() {
        skip_ws();
        return pos < s.size() ? s[pos] : '\0';
    }

    std::string read_number_token() {
        skip_ws();
        std::size_t start = pos;
        if (pos < s.size() && (s[pos] == '+' || s[pos] == '-')) ++pos;
        bool saw = false;
        while (pos < s.size() &&
               (std::isdigit(static_cast<unsigned char>(s[pos])) || s[pos] == '.' || s[pos] == '/' ||
                s[pos] == 'e' || s[pos] == 'E' ||
                ((s[pos] == '+' || s[pos] == '-') && (s[pos - 1] == 'e' || s[pos - 1] == 'E')))) {
            saw = true;
            ++pos;
        }
        if (!saw) throw parse_error("expected a number at position " + std::to_string(start) + " in '" + s + "'");
        return s.substr(start, pos - start);
    }

    // factor: x<k> or x<k>^<e>
    void read_factor(MultiIndex& alpha) {
        skip_ws();
        if (peek() != 'x') throw parse_error("expected a variable at position " + std::to_string(pos));
        ++pos;
        std::size_t start = pos;
        while (pos < s.size() && std::isdigit(static_cast<unsigned char>(s[pos]))) ++pos;
        if (start == pos) throw parse_error("variable index missing at position " + std::to_string(start));
        std::size_t idx = std::stoul(s.substr(start, pos - start));
        if (idx < 1 || idx > dim)
            throw parse_error("variable x" + std::to_string(idx) + " outside dimension " + std::to_string(dim));
        std::uint32_t expo = 1;
        if (eat('^')) {
            skip_ws();
            std::size_t es = pos;
            while (pos < s.size() && std::isdigit(static_cast<unsigned char>(s[pos]))) ++pos;
            if (es == pos) throw parse_error("exponent missing at position " + std::to_string(es));
            expo = static_cast<std::uint32_t>(std::stoul(s.substr(es, pos - es)));
        }
        alpha[idx - 1] += expo;
    }

    Polynomial parse() {
        Polynomial out(dim);
        bool first = true;
        while (true) {
            skip_ws();
            if (pos >= s.size()) break;
            int sign = 1;
            if (!first || peek() == '+' || peek() == '-') {
                if (eat('+')) {
                } else if (eat('-')) {
                    sign = -1;
                } else if (!first) {
                    throw parse_error("expected '+' or '-' at position " + std::to_string(pos));
                }
            }
            first = false;
            // term: [coefficient] [* factor]* | factor [* factor]*
            Rational coeff(1);
            MultiIndex alpha = MultiIndex::zero(dim);
            bool have_any = false;
            if (peek() != 'x') {
                coeff = parse_rational(read_number_token(), exact_mode);
                have_any = true;
            }
            while (true) {
                if (have_any) {
                    if (!eat('*')) break;
                } else if (peek() != 'x') {
                    break;
                }
                read_factor(alpha);
                have_any = true;
            }
            if (!have_any) throw parse_error("empty term at position " + std::to_string(pos));
            out.add_term(alpha, coeff * sign);
        }
        if (out.dim() != dim) throw parse_error("dimension mismatch");
        return out;
    }
};

} // namespace

Polynomial parse_polynomial(const std::string& text, std::size_t dim, bool exact_mode) {
    PolyParser p{text, 0, dim, exact_mode};
    p.skip_ws();
    if (p.pos >= text.size()) return Polynomial(dim); // empty = zero polynomial
    return p.parse();
}

Json cloud_to_json(const PointCloud& c, bool exact_mode) {
    Json pts = Json::array();
    for (const auto& p : c.points()) {
        Json row = Json::array();
        for (const auto& v : p) row.push_back(number_to_json(v, exact_mode));
        pts.push_back(std::move(row));
    }
    return Json{{"dimension", c.dim()}, {"points", std::move(pts)}};
}

PointCloud cloud_from_json(const Json& j, bool exact_mode, const Tolerance& tol) {
    if (!j.contains("dimension") || !j.contains("points")) throw parse_error("cloud needs dimension and points");
    std::size_t dim = j.at("dimension").get<std::size_t>();
    std::vector<Point> pts;
    for (const auto& row : j.at("points")) {
        Point p;
        for (const auto& v : row) p.push_back(number_from_json(v, exact_mode));
        pts.push_back(std::move(p));
    }
    return PointCloud(dim, std::move(pts), tol);
}

Json polymap_to_json(const PolyMap& m, bool exact_mode) {
    Json comps = Json::array();
    for (const auto& p : m.components()) comps.push_back(format_polynomial(p, exact_mode));
    return Json{{"dimension", m.domain_dim()}, {"components", std::move(comps)}};
}

PolyMap polymap_from_json(const Json& j, bool exact_mode) {
    if (!j.contains("dimension") || !j.contains("components"))
        throw parse_error("map needs dimension and components");
    std::size_t dim = j.at("dimension").get<std::size_t>();
    std::vector<Polynomial> comps;
    for (const auto& c : j.at("components")) comps.push_back(parse_polynomial(c.get<std::string>(), dim, exact_mode));
    return PolyMap(dim, std::move(comps));
}

Json jet_to_json(const JetField& f, bool exact_mode) {
    Json doc = cloud_to_json(f.cloud(), exact_mode);
    doc["order"] = f.order();
    Json coeffs = Json::array();
    for (std::size_t s = 0; s < f.basis().size(); ++s) {
        bool all_zero = true;
        for (std::size_t p = 0; p < f.cloud().size() && all_zero; ++p)
            if (f.value_at_slot(p, s) != 0) all_zero = false;
        if (all_zero) continue;
        Json rec;
        rec["alpha"] = f.basis()[s].exponents();
        Json vals = Json::array();
        for (std::size_t p = 0; p < f.cloud().size(); ++p)
            vals.push_back(number_to_json(f.value_at_slot(p, s), exact_mode));
        rec["values"] = std::move(vals);
        coeffs.push_back(std::move(rec));
    }
    doc["coefficients"] = std::move(coeffs);
    return doc;
}

JetField jet_from_json(const Json& j, bool exact_mode, const Tolerance& cloud_tol) {
    PointCloud cloud = cloud_from_json(j, exact_mode, cloud_tol);
    if (!j.contains("order")) throw parse_error("jet document needs an order");
    std::uint32_t order = j.at("order").get<std::uint32_t>();
    JetField f(cloud, order);
    if (j.contains("coefficients"))
        for (const auto& rec : j.at("coefficients")) {
            MultiIndex alpha(rec.at("alpha").get<std::vector<std::uint32_t>>());
            if (alpha.size() != cloud.dim()) throw parse_error("alpha has wrong length");
            if (alpha.norm() > order) throw parse_error("alpha " + alpha.str() + " exceeds the jet order");
            const auto& vals = rec.at("values");
            if (vals.size() != cloud.size()) throw parse_error("values row has wrong length");
            for (std::size_t p = 0; p < cloud.size(); ++p)
                f.set(p, alpha, number_from_json(vals[p], exact_mode));
        }
    return f;
}

namespace {

OrthogonalElement matrix_from_json(const Json& row_major, std::size_t dim, bool exact_mode,
                                   const std::string& label) {
    if (row_major.size() != dim * dim) throw parse_error("matrix needs " + std::to_string(dim * dim) + " entries");
    OrthogonalElement g;
    g.dim = dim;
    g.label = label;
    for (const auto& v : row_major) g.mat.push_back(number_from_json(v, exact_mode));
    return g;
}

} // namespace

GroupDocument group_from_json(const Json& j, bool exact_mode, const Tolerance& tol, std::size_t max_order) {
    std::string type = j.value("type", "finite");
    std::size_t dim = j.at("dimension").get<std::size_t>();
    if (type == "circle") {
        CircleAction circle;
        circle.dim = dim;
        for (const auto& b : j.at("blocks")) {
            auto coords = b.at("coords").get<std::vector<std::size_t>>();
            if (coords.size() != 2) throw parse_error("circle block needs two coordinates");
            circle.blocks.push_back({coords[0], coords[1], b.value("weight", 1)});
        }
        return GroupDocument{std::move(circle)};
    }
    if (type != "finite") throw parse_error("unknown group type '" + type + "'");
    auto labels = j.value("labels", std::vector<std::string>{});
    auto label_of = [&](std::size_t i, const char* prefix) {
        return i < labels.size() ? labels[i] : std::string(prefix) + std::to_string(i);
    };
    if (j.contains("elements")) {
        std::vector<OrthogonalElement> elems;
        std::size_t i = 0;
        for (const auto& m : j.at("elements")) elems.push_back(matrix_from_json(m, dim, exact_mode, label_of(i++, "g")));
        return GroupDocument{FiniteGroup(std::move(elems), tol)};
    }
    std::vector<OrthogonalElement> gens;
    std::size_t i = 0;
    for (const auto& m : j.at("generators")) gens.push_back(matrix_from_json(m, dim, exact_mode, label_of(i++, "a")));
    return GroupDocument{group_closure(gens, tol, max_order)};
}

Json finite_group_to_json(const FiniteGroup& g, bool exact_mode) {
    Json elems = Json::array();
    Json labels = Json::array();
    for (std::size_t i = 0; i < g.size(); ++i) {
        Json row = Json::array();
        for (const auto& v : g.element(i).mat) row.push_back(number_to_json(v, exact_mode));
        elems.push_back(std::move(row));
        labels.push_back(g.element(i).label);
    }
    return Json{{"type", "finite"},
                {"dimension", g.dim()},
                {"order", g.size()},
                {"elements", std::move(elems)},
                {"labels", std::move(labels)}};
}

Json load_json_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw parse_error("cannot open '" + path + "'");
    Json j;
    try {
        in >> j;
    } catch (const std::exception& e) {
        throw parse_error("invalid JSON in '" + path + "': " + e.what());
    }
    return j;
}

void save_text_file(const std::string& path, const std::string& contents) {
    std::ofstream out(path);
    if (!out) throw parse_error("cannot open '" + path + "' for writing");
    out << contents;
}

} // namespace whitney
