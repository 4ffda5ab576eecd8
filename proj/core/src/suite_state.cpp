#include <cmath>
#include <random>

#include "hqft/json_io.hpp"
#include "hqft/suites.hpp"

namespace hqft::maxwell {

namespace {

using cd = std::complex<double>;
using nlohmann::json;

int koszul(int a, int b) { return (a * b) % 2 == 0 ? 1 : -1; }

// quadratic B-spline with unit integral on [c - a, c + a] (three equal pieces)
NumProfile bump(double c, double a) {
    Knots k;
    for (int i = 0; i <= 3; ++i) k.push_back(mpq_class(c - a + 2 * a * i / 3.0));
    return NumProfile::from(quadratic_bspline(k, 0));
}

bool in_span(const std::vector<Vec>& basis, const Vec& v) {
    if (basis.empty()) return vec_is_zero(v);
    auto with = basis;
    with.push_back(v);
    return Matrix::from_columns(v.size(), with).rank() == Matrix::from_columns(v.size(), basis).rank();
}

std::map<Word, cd> to_numeric_element(const NCElement& x) {
    std::map<Word, cd> out;
    for (const auto& [w, c] : x) out[w] += c.to_complex();
    return out;
}

Word random_word(std::mt19937& rng, int n, int max_len) {
    std::uniform_int_distribution<int> len(0, max_len), gen(0, n - 1);
    Word w(len(rng));
    for (auto& g : w) g = gen(rng);
    return w;
}

Word cat(Word a, const Word& b) {
    a.insert(a.end(), b.begin(), b.end());
    return a;
}

// binomial coefficient as double (small arguments only)
double binom(int n, int k) {
    if (k < 0 || k > n) return 0;
    double r = 1;
    for (int i = 1; i <= k; ++i) r = r * (n - k + i) / i;
    return r;
}

}  // namespace

SpacetimeForm diamond_generator(const Diamond& d) {
    // co-exact 1-form delta(h vol), h = rho(t) sigma(theta) on the inscribed box
    double a = d.r / 2;
    NumProfile rho = bump(d.t, a), sigma = bump(d.theta, a);
    SpacetimeForm x;
    x.degree = 0;
    x.S = {{rho.derivative(), sigma}};
    x.T = {{rho, sigma.derivative()}};
    return x;
}

std::vector<std::pair<std::string, SpacetimeForm>> diamond_test_forms(const Diamond& d) {
    double a = d.r / 2;
    NumProfile rho = bump(d.t, a), sigma = bump(d.theta, a);
    NumProfile rho2 = bump(d.t + a / 3, 2 * a / 3), sigma2 = bump(d.theta - a / 3, 2 * a / 3);
    std::vector<std::pair<std::string, SpacetimeForm>> out;
    for (int deg : {-1, 0}) {
        std::string p = deg == -1 ? "A" : "B";
        out.push_back({p + "_S", {deg, {{rho, sigma}}, {}}});
        out.push_back({p + "_T", {deg, {}, {{rho, sigma}}}});
        out.push_back({p + "_mixed", {deg, {{rho2, sigma}}, {{rho, sigma2}}}});
    }
    out.push_back({"G", {1, {{rho, sigma}}, {}}});
    out.push_back({"G_shifted", {1, {{rho2, sigma2}}, {}}});
    out.push_back({"generator", diamond_generator(d)});
    return out;
}

MaxwellNet build_maxwell_net(const Config& cfg) {
    MaxwellNet mn;
    SmallModel sm = build_small_model(cfg);
    GradedSpace sp = sm.L.space();
    std::map<std::string, std::vector<FormData>> modes;
    for (const auto& [name, data] : sm.images) modes[name] = {data};
    for (const auto& d : cfg.diamonds) {
        sp.basis[0].push_back("j_" + d.name);
        modes["j_" + d.name] = mode_decomposition(diamond_generator(d), cfg.causality_modes);
    }
    for (int n : sp.degrees())
        for (const auto& name : sp.basis.at(n)) {
            mn.names.push_back(name);
            mn.modes.push_back(modes[name]);
        }
    double snap = cfg.tolerance("snap");
    std::vector<TauEntry> tau;
    for (std::size_t i = 0; i < mn.names.size(); ++i)
        for (std::size_t j = i + 1; j < mn.names.size(); ++j) {
            double v = poisson_modes(mn.modes[i], mn.modes[j]);
            mpq_class q = Scalar::snap(v, snap);
            mn.max_snap_error = std::max(mn.max_snap_error, std::abs(v - q.get_d()));
            if (q != 0) tau.push_back({mn.names[i], mn.names[j], Scalar(q)});
        }
    mn.global = ccr_quantize(CochainComplex(sp, {}), tau, cfg.word_cutoff);

    std::size_t n = mn.global->num_generators();
    auto decl = [&](std::size_t g) {
        return std::find(mn.names.begin(), mn.names.end(), mn.global->name(static_cast<int>(g))) - mn.names.begin();
    };
    mn.w2_numeric.assign(n, std::vector<cd>(n));
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j)
            mn.w2_numeric[i][j] = omega2_modes(mn.modes[decl(i)], mn.modes[decl(j)], cfg.harmonic_a);
    mn.w2_exact = Matrix(n, n);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j) {
            int sg = koszul(mn.global->degree(i), mn.global->degree(j));
            cd sym = 0.5 * (mn.w2_numeric[i][j] + double(sg) * mn.w2_numeric[j][i]);
            mn.w2_exact(i, j) = Scalar::snap(sym, snap) + Scalar(mpq_class(0), mpq_class(1, 2)) * mn.global->tau(i, j);
        }

    std::vector<std::string> objects;
    std::vector<std::pair<std::string, std::string>> less;
    for (const auto& d : cfg.diamonds) {
        objects.push_back(d.name);
        less.push_back({d.name, "M"});
    }
    objects.push_back("M");
    mn.net.site = poset_site(objects, less);
    mn.top = mn.net.site.object("M");
    for (const auto& d : cfg.diamonds) {
        GradedSpace s;
        s.basis[0] = {"j_" + d.name};
        mn.net.algebra.push_back(ccr_quantize(CochainComplex(s, {}), {}, cfg.word_cutoff));
    }
    mn.net.algebra.push_back(mn.global);
    for (const auto& a : mn.net.site.arrows) {
        const auto& src = mn.net.algebra[a.source];
        if (a.source == a.target)
            mn.net.map.push_back(identity_morphism(src));
        else
            mn.net.map.push_back({src, mn.global, {nc_generator(mn.global->index(src->name(0)))}});
    }
    validate_net(mn.net);
    return mn;
}

GNSModel build_gns(const MaxwellNet& mn, int cutoff) {
    GNSModel g;
    auto w = exact_state(*mn.global, mn.w2_exact);
    g.data = gns_radical(*mn.global, w, cutoff, cutoff);
    g.module = realize(gns_presentation(mn.global, g.data), cutoff);
    g.rep = const_rep(mn.net, g.module, mn.top);
    return g;
}

Report run_causality(const Config& cfg) {
    Report r;
    double tol = cfg.tolerance("causality");
    if (cfg.diamonds.size() < 3) throw ConfigError("causality suite needs three diamonds");
    const Diamond &D1 = cfg.diamonds[0], &D2 = cfg.diamonds[1], &D3 = cfg.diamonds[2];

    using Decomposed = std::vector<std::pair<std::string, std::vector<FormData>>>;
    auto decompose = [&](const Diamond& d, int modes) {
        Decomposed out;
        for (const auto& [name, f] : diamond_test_forms(d)) out.push_back({name, mode_decomposition(f, modes)});
        return out;
    };
    // largest |tau| over test-form pairs of complementary degree, with the pair attaining it
    auto worst = [](const Decomposed& X, const Decomposed& Y) {
        std::pair<double, std::string> best{0, ""};
        for (const auto& [nx, x] : X)
            for (const auto& [ny, y] : Y) {
                if (x[0].degree + y[0].degree != 0) continue;
                double v = std::abs(poisson_modes(x, y));
                if (v >= best.first) best = {v, "(" + nx + "," + ny + ")"};
            }
        return best;
    };

    int M = cfg.causality_modes;
    auto X1 = decompose(D1, M), X2 = decompose(D2, M), X3 = decompose(D3, M);
    auto sep = worst(X1, X2);
    auto sep_half = worst(decompose(D1, M / 2), decompose(D2, M / 2));
    r.within("causality.disjoint", "tau vanishes on all test-form pairs of causally disjoint diamonds", sep.first, tol,
             json{{"pair", sep.second}, {"value", sep.first}, {"value_at_half_modes", sep_half.first}});
    auto over = worst(X1, X3);
    r.add("causality.overlapping", "tau is nonzero (> 1e-3) on some pair of overlapping diamonds", over.first > 1e-3,
          over.first, json{{"pair", over.second}, {"value", over.first}});
    auto self = worst(X1, X1);
    r.add("causality.self", "tau is nonzero (> 1e-3) on some pair within one diamond", self.first > 1e-3, self.first,
          json{{"pair", self.second}, {"value", self.first}});

    double inside = 0;
    for (const auto& [n, x] : X1)
        if (x[0].degree == 0) inside = std::max(inside, std::abs(omega2_modes(x, x, cfg.harmonic_a) -
                                                                 std::conj(omega2_modes(x, x, cfg.harmonic_a))));
    r.within("causality.omega_real_diagonal", "omega2(x,x) is real for degree-0 test forms", inside, tol);
    return r;
}

Report run_ccr(const Config& cfg, unsigned seed) {
    Report r;
    SmallModel sm = build_small_model(cfg);
    const auto& A = *sm.A;
    int n = static_cast<int>(A.num_generators());
    int cutoff = std::min(cfg.word_cutoff, A.cutoff());
    std::mt19937 rng(seed);

    int mismatches = 0;
    json witness;
    for (int i = 0; i < 1000; ++i) {
        Word w = random_word(rng, n, cutoff);
        auto a = normal_form_rewrite(A, w, RewriteStrategy::Leftmost);
        auto b = normal_form_rewrite(A, w, RewriteStrategy::Rightmost);
        if (a != b && mismatches++ == 0) witness = A.word_str(w);
    }
    r.add("ccr.confluence", "leftmost and rightmost rewriting agree on 1000 random words", mismatches == 0, mismatches,
          witness);

    int even = 0, odd = 0;
    for (int g = 0; g < n; ++g) (A.odd(g) ? odd : even)++;
    json counts = json::array();
    bool pbw_ok = true;
    for (int c = 0; c <= std::min(6, cutoff); ++c) {
        double formula = 0;
        for (int l = 0; l <= c; ++l)
            for (int j = 0; j <= std::min(l, odd); ++j)
                formula += binom(odd, j) * (l - j == 0 ? 1 : binom(even + l - j - 1, l - j));
        std::size_t enumerated = pbw_monomials(A, c).size();
        counts.push_back({c, formula, enumerated});
        pbw_ok = pbw_ok && formula == double(enumerated);
    }
    r.add("ccr.pbw_count", "PBW monomial count matches sym(even) x ext(odd) for cutoffs <= 6", pbw_ok, 0,
          pbw_ok ? json(nullptr) : counts);

    auto w = numeric_state(A, sm.two_point_numeric);
    double worst = 0;
    std::string worst_el;
    std::uniform_int_distribution<int> gen(0, n - 1);
    for (int i = 0; i < 200; ++i) {
        int g1 = gen(rng), g2 = gen(rng);
        int budget = std::max(0, cutoff - 2);
        Word u = random_word(rng, n, budget / 2 + budget % 2), v = random_word(rng, n, budget / 2);
        NCElement x;
        x[cat(cat(u, {g1, g2}), v)] += Scalar(1);
        x[cat(cat(u, {g2, g1}), v)] -= Scalar(koszul(A.degree(g1), A.degree(g2)));
        x[cat(u, v)] -= Scalar(mpq_class(0), mpq_class(1)) * A.tau(g1, g2);
        double val = std::abs(w(to_numeric_element(x)));
        if (val >= worst) {
            worst = val;
            worst_el = nc_str(A, x);
        }
    }
    r.within("ccr.state_on_ideal", "the quasi-free state vanishes on 200 random elements of the CCR ideal", worst,
             cfg.tolerance("pairing"), worst < cfg.tolerance("pairing") ? json(nullptr) : json(worst_el));

    bool inv = true, anti = true, dcomm = true, unit = true;
    std::string why;
    unit = star(A, nc_scalar(Scalar(1))) == nc_scalar(Scalar(1)) &&
           star(A, nc_scalar(Scalar(mpq_class(2), mpq_class(3)))) == nc_scalar(Scalar(mpq_class(2), mpq_class(-3)));
    for (int i = 0; i < 100; ++i) {
        NCElement x = normal_form_word(A, random_word(rng, n, 3)), y = normal_form_word(A, random_word(rng, n, 3));
        x = nc_scale(x, Scalar(mpq_class(1 + i % 3), mpq_class(i % 2)));
        if (star(A, star(A, x)) != x) inv = false, why = nc_str(A, x);
        if (nc_is_zero(x) || nc_is_zero(y)) continue;
        int sg = koszul(element_degree(A, x), element_degree(A, y));
        auto lhs = normal_form(A, star(A, multiply(A, x, y)));
        auto rhs = nc_scale(multiply(A, star(A, y), star(A, x)), Scalar(sg));
        if (lhs != rhs) anti = false, why = nc_str(A, x) + " ; " + nc_str(A, y);
        if (normal_form(A, star(A, differential(A, x))) != differential(A, star(A, x))) dcomm = false;
    }
    r.add("ccr.star_involution", "x** = x and 1* = 1, exactly", inv && unit, 0, why.empty() ? json(nullptr) : json(why));
    r.add("ccr.star_antimultiplicative", "(xy)* = (-1)^{|x||y|} y* x*, exactly", anti, 0,
          anti ? json(nullptr) : json(why));
    r.add("ccr.star_differential", "star commutes with the differential", dcomm);
    return r;
}

Report run_gns(const Config& cfg) {
    Report r;
    SmallModel sm = build_small_model(cfg);
    const auto& A = *sm.A;
    auto w = exact_state(A, sm.two_point);
    int c = cfg.gns_cutoff;
    auto g = gns_radical(A, w, c, c);

    auto basis_vec = [&](int deg, const Word& m) {
        const auto& mons = g.monomials.at(deg);
        return unit_vec(mons.size(), std::find(mons.begin(), mons.end(), m) - mons.begin());
    };
    r.add("gns.unit_not_in_radical", "1 is not in the radical", !in_span(g.radical[0], basis_vec(0, {})));
    int e = A.index("e");
    r.add("gns.e_not_in_radical", "e is not in the radical", !in_span(g.radical[1], basis_vec(1, {e})));

    auto ideal = gns_left_ideal_check(A, w, g);
    r.add("gns.left_ideal", "the radical is closed under left multiplication (cutoff " + std::to_string(c) + ")",
          ideal.ok, 0, ideal.ok ? json(nullptr) : json(ideal.witness));

    int a1 = A.index("a1"), a2 = A.index("a2");
    auto G = star_gram(A, w, {{}, {a1}, {a2}});
    double lam = min_eigenvalue(G);
    r.add("gns.positivity_degree0", "Gram matrix omega(b* b') on {1, a1, a2} is positive semidefinite",
          lam > -1e-9, lam, json{{"min_eigenvalue", lam}, {"gram", matrix_to_json(G)}});

    auto g_more = gns_radical(A, w, c, c + 1);
    r.add("gns.stable_dims", "quotient dims at cutoff " + std::to_string(c) + " are unchanged by tests of length " +
                                 std::to_string(c + 1),
          g_more.quotient_dim == g.quotient_dim, 0,
          json{{"tests_" + std::to_string(c), g.quotient_dim}, {"tests_" + std::to_string(c + 1), g_more.quotient_dim}});

    // numeric cross-check of the exact ranks
    auto wn = numeric_state(A, sm.two_point_numeric);
    bool svd_ok = true;
    json ranks = json::object();
    for (const auto& [n, mons] : g.monomials) {
        auto tests = g.gram[n].rows();
        if (tests == 0) continue;
        std::vector<std::vector<cd>> m(tests, std::vector<cd>(mons.size()));
        auto tw = pbw_monomials(A, c);
        std::vector<Word> bs;
        for (const auto& b : tw)
            if (A.word_degree(b) == -n) bs.push_back(b);
        for (std::size_t i = 0; i < bs.size(); ++i)
            for (std::size_t j = 0; j < mons.size(); ++j) m[i][j] = wn.word(cat(bs[i], mons[j]));
        auto s = svd_rank(m, cfg.tolerance("gns_gap"));
        std::size_t exact_rank = mons.size() - g.radical[n].size();
        ranks[std::to_string(n)] = {exact_rank, s.rank, s.smallest_kept, s.largest_dropped};
        svd_ok = svd_ok && s.rank == exact_rank;
    }
    r.add("gns.numeric_rank", "numeric SVD rank of the truncated Gram matrices equals the exact rank", svd_ok, 0,
          svd_ok ? json(nullptr) : ranks);
    return r;
}

Report run_net(const Config& cfg) {
    Report r;
    MaxwellNet mn = build_maxwell_net(cfg);
    r.within("net.snap_error", "Poisson values are within the snap tolerance of their rationalisation",
             mn.max_snap_error, cfg.tolerance("snap"));
    auto gns = build_gns(mn, std::min(cfg.gns_cutoff, 2));
    try {
        validate_rep(gns.rep);
        r.add("net.validate_rep", "the GNS net representation satisfies the representation axioms", true);
    } catch (const std::exception& e) {
        r.add("net.validate_rep", "the GNS net representation satisfies the representation axioms", false, 0, e.what());
    }
    auto top = eval_at(gns.rep, mn.top);
    r.add("net.eval_top", "evaluating the GNS representation at M returns V_omega",
          modules_equal(*top, *gns.module));

    const auto& A = *mn.global;
    const auto& D = cfg.diamonds;
    auto j = [&](const Diamond& d) { return nc_generator(A.index("j_" + d.name)); };
    auto comm = [&](const Diamond& a, const Diamond& b) { return graded_commutator(A, j(a), j(b)); };
    r.add("net.disjoint_commute", "generators of causally disjoint diamonds commute in A(M)",
          nc_is_zero(comm(D[0], D[1])), 0,
          nc_is_zero(comm(D[0], D[1])) ? json(nullptr) : json(nc_str(A, comm(D[0], D[1]))));
    return r;
}

}  // namespace hqft::maxwell
