// Command-line front end: binds the file formats to the library operations
// with deterministic, machine-readable output.

#include <iostream>
#include <sstream>

#include <CLI11.hpp>

#include "whitney/invariants.hpp"
#include "whitney/io.hpp"

using namespace whitney;

namespace {

struct RunConfig {
    std::string mode = "exact";
    double tol = 1e-9;
    std::uint64_t seed = 0;
    std::string out;

    bool exact() const { return mode == "exact"; }
    Tolerance tolerance() const { return exact() ? Tolerance::exact_mode() : Tolerance::float_mode(tol); }
};

void emit(const RunConfig& cfg, const std::string& text) {
    if (cfg.out.empty())
        std::cout << text << "\n";
    else
        save_text_file(cfg.out, text + "\n");
}

void emit_json(const RunConfig& cfg, const Json& doc) { emit(cfg, doc.dump(2)); }

Point parse_point(const std::string& text, bool exact_mode) {
    Point p;
    std::stringstream ss(text);
    std::string item;
    while (std::getline(ss, item, ',')) p.push_back(parse_rational(item, exact_mode));
    if (p.empty()) throw parse_error("empty point literal");
    return p;
}

MultiIndex parse_alpha(const std::string& text) {
    std::vector<std::uint32_t> e;
    std::stringstream ss(text);
    std::string item;
    while (std::getline(ss, item, ',')) e.push_back(static_cast<std::uint32_t>(std::stoul(item)));
    return MultiIndex(e);
}

Polynomial load_single_poly(const std::string& path, bool exact_mode) {
    PolyMap m = polymap_from_json(load_json_file(path), exact_mode);
    if (m.target_dim() != 1) throw parse_error("expected a single-component polynomial document");
    return m.component(0);
}

Json invariance_to_json(const InvarianceReport& rep, bool exact_mode) {
    Json out;
    out["ok"] = rep.ok;
    Json v = Json::array();
    for (const auto& viol : rep.violations) {
        v.push_back(Json{{"index", viol.index},
                         {"point", viol.point},
                         {"alpha", viol.alpha.exponents()},
                         {"got", number_to_json(viol.got, exact_mode)},
                         {"expected", number_to_json(viol.expected, exact_mode)}});
        if (v.size() >= 16) break; // reports stay small
    }
    out["violations"] = std::move(v);
    return out;
}

std::vector<std::vector<Rational>> lie_generators_of(const GroupDocument& doc) {
    if (!doc.is_finite()) return {doc.circle().generator_matrix()};
    return {}; // a finite group has trivial Lie algebra
}

std::vector<GroupoidArrow> arrows_of(const GroupDocument& doc, const PointCloud& Z, const Tolerance& tol) {
    if (doc.is_finite()) return groupoid_arrows(doc.finite(), Z, tol);
    return groupoid_arrows(doc.circle(), Z, tol);
}

int run_demo_circle(const RunConfig& cfg) {
    std::ostringstream out;
    CircleAction circle{2, {{0, 1, 1}}};
    PointCloud Z(2, {{Rational(0), Rational(1)}});
    auto arrows = groupoid_arrows(circle, Z, cfg.tolerance());
    out << "demo circle: Z = {(0,1)} under the weight-1 rotation action on R^2\n";
    out << "arrows: " << arrows.size() << " (the unit arrow only; the groupoid condition is void here)\n";

    Polynomial r2(2);
    r2.add_term(MultiIndex({2, 0}), 1);
    r2.add_term(MultiIndex({0, 2}), 1);
    auto lie = std::vector<std::vector<Rational>>{circle.generator_matrix()};
    auto pass = check_inv2(lie, jet_of_poly(r2, Z, 2), cfg.tolerance());
    out << "inv2 J^2(x1^2 + x2^2): " << (pass.ok ? "pass" : "fail") << "\n";
    auto fail = check_inv2(lie, jet_of_poly(Polynomial::variable(2, 1), Z, 2), cfg.tolerance());
    out << "inv2 J^2(x2): " << (fail.ok ? "pass" : "fail");
    if (!fail.ok) {
        const auto& v = fail.violations.front();
        out << " at alpha=" << v.alpha.str() << " value " << format_rational(v.got);
    }
    out << "\n";
    out << "note: the generator annihilates more jets at a single point than those\n"
           "supported on pure x2-derivatives; the squared-radius jet above passes even\n"
           "though its (2,0) component is 2.";
    emit(cfg, out.str());
    return 0;
}

int run_demo_cotangent(const RunConfig& cfg, std::size_t n) {
    std::ostringstream out;
    out << "demo cotangent: O_" << n << " acting on (q, p) in R^" << n << " x R^" << n << "\n";
    Point zero_q(n, Rational(0)), zero_p(n, Rational(0));
    Point q1(n, Rational(0)), p_par(n, Rational(0)), p_gen(n, Rational(0));
    q1[0] = 1;
    p_par[0] = 2;
    p_gen[1] = 1;
    double eps = cfg.exact() ? 0.0 : cfg.tol;
    auto show = [&](const char* what, const Point& q, const Point& p) {
        OrbitTypeLabel label = classify_cotangent(n, q, p, eps);
        out << what << " -> stratum " << label.name << "\n";
    };
    show("(q,p) = (0,0)", zero_q, zero_p);
    show("q = e1, p = 2 e1 (parallel)", q1, p_par);
    show("q = e1, p = e2 (generic)", q1, p_gen);
    out << "three orbit-type strata: V_(G), V_(O_{n-1}), V_(e)";
    emit(cfg, out.str());
    return 0;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"jet calculus on point clouds: composition pullbacks, Whitney seminorms, "
                 "group actions, and invariant extension"};
    app.require_subcommand(1);
    app.fallthrough();

    RunConfig cfg;
    app.add_option("--mode", cfg.mode, "numeric mode")->check(CLI::IsMember({"exact", "float"}));
    app.add_option("--tol", cfg.tol, "comparison tolerance in float mode");
    app.add_option("--seed", cfg.seed, "seed for randomized operations");
    app.add_option("--out", cfg.out, "output path (default: stdout)");

    // ---- jet ----
    auto* jet_cmd = app.add_subcommand("jet", "jet of a polynomial on a cloud");
    std::string jet_poly, jet_cloud;
    std::uint32_t jet_order = 2;
    jet_cmd->add_option("--poly", jet_poly, "polynomial document")->required();
    jet_cmd->add_option("--cloud", jet_cloud, "cloud document")->required();
    jet_cmd->add_option("--order", jet_order, "jet order");

    // ---- product ----
    auto* product_cmd = app.add_subcommand("product", "product of two jet fields");
    std::vector<std::string> product_in;
    product_cmd->add_option("--in", product_in, "two jet documents")->expected(2);

    // ---- diff ----
    auto* diff_cmd = app.add_subcommand("diff", "formal derivative of a jet field");
    std::string diff_in, diff_beta;
    diff_cmd->add_option("--in", diff_in, "jet document")->required();
    diff_cmd->add_option("--beta", diff_beta, "derivative multiindex, e.g. 1,0")->required();

    // ---- taylor ----
    auto* taylor_cmd = app.add_subcommand("taylor", "Taylor polynomial at a cloud point");
    std::string taylor_in, taylor_point;
    std::uint32_t taylor_k = 0;
    taylor_cmd->add_option("--in", taylor_in, "jet document")->required();
    taylor_cmd->add_option("--point", taylor_point, "base point, e.g. 0,1")->required();
    taylor_cmd->add_option("--k", taylor_k, "Taylor order")->required();

    // ---- remainder ----
    auto* remainder_cmd = app.add_subcommand("remainder", "Taylor remainder field");
    std::string rem_in, rem_point;
    std::uint32_t rem_k = 0;
    remainder_cmd->add_option("--in", rem_in, "jet document")->required();
    remainder_cmd->add_option("--point", rem_point, "base point")->required();
    remainder_cmd->add_option("--k", rem_k, "order")->required();

    // ---- seminorm ----
    auto* seminorm_cmd = app.add_subcommand("seminorm", "sup and Whitney seminorms over K");
    std::string semi_in, semi_points;
    std::uint32_t semi_k = 0;
    seminorm_cmd->add_option("--in", semi_in, "jet document")->required();
    seminorm_cmd->add_option("--k", semi_k, "seminorm order")->required();
    seminorm_cmd->add_option("--points", semi_points, "comma-separated point indices (default: all)");

    // ---- pullback ----
    auto* pullback_cmd = app.add_subcommand("pullback", "pull a jet field back through a map");
    std::string pb_map, pb_in, pb_source, pb_method = "multi";
    std::uint32_t pb_order = 0;
    pullback_cmd->add_option("--map", pb_map, "map document")->required();
    pullback_cmd->add_option("--in", pb_in, "jet document on the target")->required();
    pullback_cmd->add_option("--source", pb_source, "source cloud document")->required();
    pullback_cmd->add_option("--order", pb_order, "pullback order")->required();
    pullback_cmd->add_option("--method", pb_method, "multi | comb")
        ->check(CLI::IsMember({"multi", "comb"}));

    // ---- check-comm ----
    auto* comm_cmd = app.add_subcommand("check-comm", "pullback composition identity check");
    std::string comm_map, comm_poly, comm_cloud;
    std::uint32_t comm_order = 2;
    comm_cmd->add_option("--map", comm_map, "map document")->required();
    comm_cmd->add_option("--poly", comm_poly, "polynomial document on the target")->required();
    comm_cmd->add_option("--cloud", comm_cloud, "source cloud document")->required();
    comm_cmd->add_option("--order", comm_order, "jet order");

    // ---- group-closure ----
    auto* closure_cmd = app.add_subcommand("group-closure", "close generators into a finite group");
    std::string closure_in;
    std::size_t closure_max = 1000;
    closure_cmd->add_option("--group", closure_in, "group document with generators")->required();
    closure_cmd->add_option("--max-order", closure_max, "bound on the group order");

    // ---- arrows ----
    auto* arrows_cmd = app.add_subcommand("arrows", "restricted action groupoid arrows");
    std::string arrows_group, arrows_cloud;
    arrows_cmd->add_option("--group", arrows_group, "group document")->required();
    arrows_cmd->add_option("--cloud", arrows_cloud, "cloud document")->required();

    // ---- check-inv1 ----
    auto* inv1_cmd = app.add_subcommand("check-inv1", "groupoid invariance of a jet field");
    std::string inv1_group, inv1_in;
    inv1_cmd->add_option("--group", inv1_group, "group document")->required();
    inv1_cmd->add_option("--in", inv1_in, "jet document")->required();

    // ---- check-inv2 ----
    auto* inv2_cmd = app.add_subcommand("check-inv2", "infinitesimal invariance of a jet field");
    std::string inv2_group, inv2_in;
    inv2_cmd->add_option("--group", inv2_group, "group document (circle supplies its generator)")->required();
    inv2_cmd->add_option("--in", inv2_in, "jet document")->required();

    // ---- average ----
    auto* avg_cmd = app.add_subcommand("average", "group average of a polynomial");
    std::string avg_group, avg_poly;
    std::size_t avg_nodes = 0;
    avg_cmd->add_option("--group", avg_group, "group document")->required();
    avg_cmd->add_option("--poly", avg_poly, "polynomial document")->required();
    avg_cmd->add_option("--nodes", avg_nodes, "circle quadrature nodes (default deg+1)");

    // ---- extend ----
    auto* extend_cmd = app.add_subcommand("extend", "invariant extension of a jet field to the orbit");
    std::string ext_group, ext_in;
    extend_cmd->add_option("--group", ext_group, "finite group document")->required();
    extend_cmd->add_option("--in", ext_in, "jet document on Z")->required();

    // ---- hilbert ----
    auto* hilbert_cmd = app.add_subcommand("hilbert", "Hilbert-map catalog operations");
    auto* hilbert_list = hilbert_cmd->add_subcommand("list", "list catalog entries");
    auto* hilbert_pb = hilbert_cmd->add_subcommand("pullback", "pull a boundary jet through an entry");
    std::string hp_entry, hp_in, hp_cloud;
    std::uint32_t hp_order = 2;
    hilbert_pb->add_option("--entry", hp_entry, "catalog entry name")->required();
    hilbert_pb->add_option("--in", hp_in, "jet document on the invariant side")->required();
    hilbert_pb->add_option("--cloud", hp_cloud, "cloud document Z")->required();
    hilbert_pb->add_option("--order", hp_order, "pullback order");
    hilbert_cmd->require_subcommand(1);

    // ---- isotropy ----
    auto* iso_cmd = app.add_subcommand("isotropy", "isotropy subgroup of a point");
    std::string iso_group, iso_point;
    iso_cmd->add_option("--group", iso_group, "finite group document")->required();
    iso_cmd->add_option("--point", iso_point, "point, e.g. 1,0")->required();

    // ---- classify-cotangent ----
    auto* cls_cmd = app.add_subcommand("classify-cotangent", "orbit-type stratum of (q, p)");
    std::size_t cls_n = 2;
    std::string cls_q, cls_p;
    cls_cmd->add_option("--n", cls_n, "base dimension (>= 2)")->required();
    cls_cmd->add_option("--q", cls_q, "q point")->required();
    cls_cmd->add_option("--p", cls_p, "p point")->required();

    // ---- rank ----
    auto* rank_cmd = app.add_subcommand("rank", "generic Jacobian rank of a polynomial map");
    std::string rank_map;
    int rank_trials = 3;
    rank_cmd->add_option("--map", rank_map, "map document")->required();
    rank_cmd->add_option("--trials", rank_trials, "number of sample points");

    // ---- demo ----
    auto* demo_cmd = app.add_subcommand("demo", "worked examples");
    auto* demo_circle = demo_cmd->add_subcommand("circle", "circle action on a single point");
    auto* demo_cotangent = demo_cmd->add_subcommand("cotangent", "orbit types of the cotangent action");
    std::size_t demo_n = 2;
    demo_cotangent->add_option("--n", demo_n, "base dimension (>= 2)");
    demo_cmd->require_subcommand(1);

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        if (e.get_exit_code() == 0) return app.exit(e); // --help
        app.exit(e);
        return 2;
    }

    try {
        const bool exact = cfg.exact();
        const Tolerance tol = cfg.tolerance();

        if (*jet_cmd) {
            Polynomial f = load_single_poly(jet_poly, exact);
            PointCloud X = cloud_from_json(load_json_file(jet_cloud), exact, tol);
            emit_json(cfg, jet_to_json(jet_of_poly(f, X, jet_order), exact));
        } else if (*product_cmd) {
            JetField a = jet_from_json(load_json_file(product_in.at(0)), exact, tol);
            JetField b = jet_from_json(load_json_file(product_in.at(1)), exact, tol);
            emit_json(cfg, jet_to_json(jet_mul(a, b), exact));
        } else if (*diff_cmd) {
            JetField f = jet_from_json(load_json_file(diff_in), exact, tol);
            emit_json(cfg, jet_to_json(jet_diff(f, parse_alpha(diff_beta)), exact));
        } else if (*taylor_cmd) {
            JetField f = jet_from_json(load_json_file(taylor_in), exact, tol);
            Polynomial t = taylor_poly(f, parse_point(taylor_point, exact), taylor_k, tol);
            emit_json(cfg, polymap_to_json(PolyMap(f.dim(), {t}), exact));
        } else if (*remainder_cmd) {
            JetField f = jet_from_json(load_json_file(rem_in), exact, tol);
            auto idx = f.cloud().find(parse_point(rem_point, exact), tol);
            if (!idx) throw domain_error("base point is not in the cloud");
            emit_json(cfg, jet_to_json(remainder_field(f, *idx, rem_k), exact));
        } else if (*seminorm_cmd) {
            JetField f = jet_from_json(load_json_file(semi_in), exact, tol);
            std::vector<std::size_t> K;
            if (semi_points.empty())
                for (std::size_t i = 0; i < f.cloud().size(); ++i) K.push_back(i);
            else {
                std::stringstream ss(semi_points);
                std::string item;
                while (std::getline(ss, item, ',')) K.push_back(std::stoul(item));
            }
            WhitneyReport rep = whitney_seminorm(f, K, semi_k);
            emit_json(cfg, Json{{"sup", rep.sup},
                                {"quotientSup", rep.quotient_sup},
                                {"total", rep.total},
                                {"argmax", Json{{"x", rep.arg_x},
                                                {"y", rep.arg_y},
                                                {"alpha", rep.arg_alpha.exponents()}}}});
        } else if (*pullback_cmd) {
            PolyMap phi = polymap_from_json(load_json_file(pb_map), exact);
            JetField F = jet_from_json(load_json_file(pb_in), exact, tol);
            PointCloud X = cloud_from_json(load_json_file(pb_source), exact, tol);
            PullbackPlan plan = make_plan(phi, X, F.cloud(), tol);
            JetField out = pb_method == "multi" ? pullback_multi(plan, F, pb_order)
                                                : pullback_comb(plan, F, pb_order);
            emit_json(cfg, jet_to_json(out, exact));
        } else if (*comm_cmd) {
            PolyMap phi = polymap_from_json(load_json_file(comm_map), exact);
            Polynomial f = load_single_poly(comm_poly, exact);
            PointCloud X = cloud_from_json(load_json_file(comm_cloud), exact, tol);
            CommutativityReport rep = check_commutativity(f, phi, X, comm_order, tol);
            emit_json(cfg, Json{{"ok", rep.ok},
                                {"maxDeviation", rep.max_deviation},
                                {"point", rep.point},
                                {"alpha", rep.alpha.exponents()}});
        } else if (*closure_cmd) {
            GroupDocument doc = group_from_json(load_json_file(closure_in), exact, tol, closure_max);
            if (!doc.is_finite()) throw domain_error("group-closure needs a finite group document");
            emit_json(cfg, finite_group_to_json(doc.finite(), exact));
        } else if (*arrows_cmd) {
            GroupDocument doc = group_from_json(load_json_file(arrows_group), exact, tol, 1000);
            PointCloud Z = cloud_from_json(load_json_file(arrows_cloud), exact, tol);
            auto arrows = arrows_of(doc, Z, tol);
            Json rows = Json::array();
            for (const auto& a : arrows) {
                Json row{{"source", a.source}, {"target", a.target}, {"label", a.g.label}};
                if (a.group_index) row["element"] = *a.group_index;
                if (a.angle) row["angle"] = *a.angle;
                rows.push_back(std::move(row));
            }
            emit_json(cfg, Json{{"count", arrows.size()}, {"arrows", std::move(rows)}});
        } else if (*inv1_cmd) {
            GroupDocument doc = group_from_json(load_json_file(inv1_group), exact, tol, 1000);
            JetField F = jet_from_json(load_json_file(inv1_in), exact, tol);
            emit_json(cfg, invariance_to_json(check_inv1(arrows_of(doc, F.cloud(), tol), F, tol), exact));
        } else if (*inv2_cmd) {
            GroupDocument doc = group_from_json(load_json_file(inv2_group), exact, tol, 1000);
            JetField F = jet_from_json(load_json_file(inv2_in), exact, tol);
            emit_json(cfg, invariance_to_json(check_inv2(lie_generators_of(doc), F, tol), exact));
        } else if (*avg_cmd) {
            GroupDocument doc = group_from_json(load_json_file(avg_group), exact, tol, 1000);
            Polynomial f = load_single_poly(avg_poly, exact);
            Polynomial avg = doc.is_finite()
                                 ? average_poly(doc.finite(), f)
                                 : average_poly(doc.circle(), f,
                                                avg_nodes ? avg_nodes : f.degree() + 1);
            emit_json(cfg, polymap_to_json(PolyMap(f.dim(), {avg}), exact));
        } else if (*extend_cmd) {
            GroupDocument doc = group_from_json(load_json_file(ext_group), exact, tol, 1000);
            if (!doc.is_finite()) throw unsupported_feature("extension needs a finite group");
            JetField F = jet_from_json(load_json_file(ext_in), exact, tol);
            emit_json(cfg, jet_to_json(extend_invariant(doc.finite(), F, tol), exact));
        } else if (*hilbert_list) {
            std::ostringstream out;
            out << "name dimension invariants rank";
            for (const auto& e : catalog())
                out << "\n"
                    << e.name << " " << e.dim << " " << e.invariants.size() << " " << e.expected_rank;
            emit(cfg, out.str());
        } else if (*hilbert_pb) {
            auto entry = catalog_entry(hp_entry);
            if (!entry) throw domain_error("unknown catalog entry '" + hp_entry + "'");
            JetField H = jet_from_json(load_json_file(hp_in), exact, tol);
            PointCloud Z = cloud_from_json(load_json_file(hp_cloud), exact, tol);
            emit_json(cfg, jet_to_json(hilbert_pullback(entry->get(), H, Z, hp_order, tol), exact));
        } else if (*iso_cmd) {
            GroupDocument doc = group_from_json(load_json_file(iso_group), exact, tol, 1000);
            if (!doc.is_finite()) throw unsupported_feature("isotropy needs a finite group");
            Point z = parse_point(iso_point, exact);
            FiniteGroup h = isotropy(doc.finite(), z, tol);
            OrbitTypeLabel label = orbit_type_label(doc.finite(), z, tol);
            Json labels = Json::array();
            for (std::size_t i = 0; i < h.size(); ++i) labels.push_back(h.element(i).label);
            emit_json(cfg, Json{{"order", h.size()},
                                {"elements", std::move(labels)},
                                {"label", label.name},
                                {"witness", label.witness}});
        } else if (*cls_cmd) {
            OrbitTypeLabel label = classify_cotangent(cls_n, parse_point(cls_q, exact),
                                                      parse_point(cls_p, exact),
                                                      exact ? 0.0 : cfg.tol);
            emit(cfg, "stratum " + label.name);
        } else if (*rank_cmd) {
            PolyMap phi = polymap_from_json(load_json_file(rank_map), exact);
            emit_json(cfg, Json{{"rank", generic_rank(phi, rank_trials, cfg.seed)}});
        } else if (*demo_circle) {
            return run_demo_circle(cfg);
        } else if (*demo_cotangent) {
            return run_demo_cotangent(cfg, demo_n);
        }
        return 0;
    } catch (const Error& e) {
        std::cout << "error kind=" << e.kind() << " detail=" << e.what() << "\n";
        return 1;
    } catch (const std::exception& e) {
        std::cout << "error kind=internal detail=" << e.what() << "\n";
        return 1;
    }
}
