#include "hqft/suites.hpp"

namespace hqft::maxwell {

namespace {

using nlohmann::json;

// phi_dagger_j: C^1 cubics (degree -1), phi_i: discontinuous linears (degree 0), d = d^2/dt^2,
// tau(phi_a, phi_b) = m1(a) m0(b) - m0(a) m1(b)
AlgebraPtr tilde_algebra(const Knots& k, int cutoff) {
    SplineSpace F(3, 1, k), G(1, -1, k);
    std::vector<GeneratorSpec> gens;
    for (std::size_t j = 0; j < F.dim(); ++j) {
        GeneratorSpec g{"phi_dagger" + std::to_string(j), -1, {}};
        auto c = G.coords(F.basis(j).derivative().derivative());
        for (std::size_t i = 0; i < c.size(); ++i)
            if (c[i] != 0) g.diff.push_back({"phi" + std::to_string(i), Scalar(c[i])});
        gens.push_back(g);
    }
    for (std::size_t i = 0; i < G.dim(); ++i) gens.push_back({"phi" + std::to_string(i), 0, {}});
    std::vector<TauEntry> tau;
    for (std::size_t a = 0; a < G.dim(); ++a)
        for (std::size_t b = a + 1; b < G.dim(); ++b) {
            const auto &p = G.basis(a), &q = G.basis(b);
            mpq_class v = p.moment(1) * q.moment(0) - p.moment(0) * q.moment(1);
            if (v != 0) tau.push_back({"phi" + std::to_string(a), "phi" + std::to_string(b), Scalar(v)});
        }
    return std::make_shared<PresentedDGA>(gens, tau, cutoff);
}

NCElement linear(const PresentedDGA& A, const std::string& prefix, const std::vector<mpq_class>& c) {
    NCElement x;
    for (std::size_t i = 0; i < c.size(); ++i)
        if (c[i] != 0) x[{A.index(prefix + std::to_string(i))}] = Scalar(c[i]);
    return x;
}

bool acts_nontrivially(const RealizedModule& M, int x) {
    for (int n : M.complex->degrees())
        if (!M.act(x, n).is_zero()) return true;
    return false;
}

}  // namespace

std::unique_ptr<KGModel> build_kg(const Config& cfg) {
    auto kg = std::make_unique<KGModel>();
    const Knots& K = cfg.kg_knots;
    std::size_t n = K.size() - 1;
    kg->grids = {sub_knots(K, K[1], K[n - 1]), sub_knots(K, K[0], K[n - 1]), K};
    std::vector<std::string> objects{"O1", "O2", "M"};
    auto site = poset_site(objects, {{"O1", "O2"}, {"O2", "M"}});
    kg->tilde.site = kg->reduced.site = site;

    std::vector<AlgebraPtr> tilde;
    for (const auto& g : kg->grids) tilde.push_back(tilde_algebra(g, 6));
    kg->tilde.algebra = tilde;
    for (const auto& a : site.arrows) {
        const Knots &ks = kg->grids[a.source], &kt = kg->grids[a.target];
        const auto &S = tilde[a.source], &T = tilde[a.target];
        SplineSpace Fs(3, 1, ks), Gs(1, -1, ks), Ft(3, 1, kt), Gt(1, -1, kt);
        DGAMorphism m{S, T, std::vector<NCElement>(S->num_generators())};
        for (std::size_t j = 0; j < Fs.dim(); ++j)
            m.images[S->index("phi_dagger" + std::to_string(j))] =
                linear(*T, "phi_dagger", Ft.coords(Fs.basis(j).extended(kt)));
        for (std::size_t i = 0; i < Gs.dim(); ++i)
            m.images[S->index("phi" + std::to_string(i))] = linear(*T, "phi", Gt.coords(Gs.basis(i).extended(kt)));
        kg->tilde.map.push_back(m);
    }

    GradedSpace q;
    q.basis[0] = {"q0", "q1"};
    auto B = ccr_quantize(CochainComplex(q, {}), {{"q1", "q0", Scalar(1)}}, 6);
    kg->reduced.algebra.assign(objects.size(), B);
    kg->reduced.map.assign(site.arrows.size(), identity_morphism(B));

    kg->phi = {&kg->tilde, &kg->reduced, {}};
    for (std::size_t c = 0; c < objects.size(); ++c) {
        const auto& A = tilde[c];
        SplineSpace G(1, -1, kg->grids[c]);
        DGAMorphism f{A, B, std::vector<NCElement>(A->num_generators())};
        for (std::size_t i = 0; i < G.dim(); ++i) {
            NCElement img;
            if (G.basis(i).moment(0) != 0) img[{B->index("q0")}] = Scalar(G.basis(i).moment(0));
            if (G.basis(i).moment(1) != 0) img[{B->index("q1")}] = Scalar(G.basis(i).moment(1));
            f.images[A->index("phi" + std::to_string(i))] = img;
        }
        kg->phi.component.push_back(f);
    }
    return kg;
}

Report run_kg(const Config& cfg) {
    Report r;
    auto kg = build_kg(cfg);
    try {
        validate_net(kg->tilde);
        validate_net(kg->reduced);
        validate_net_morphism(kg->phi);
        r.add("kg.valid", "both nets and the comparison morphism are well defined", true);
    } catch (const std::exception& e) {
        r.add("kg.valid", "both nets and the comparison morphism are well defined", false, 0, e.what());
        return r;
    }
    r.add("kg.weak_equivalence", "the comparison morphism is a weak equivalence of nets (PBW length <= 2)",
          is_we_net(kg->phi, 2));

    const std::size_t top = kg->grids.size() - 1;
    auto reg = regular_rep(kg->tilde, 2);
    bool acts = false;
    for (std::size_t c = 0; c < reg.module.size(); ++c) {
        const auto& A = *kg->tilde.algebra[c];
        for (std::size_t g = 0; g < A.num_generators(); ++g)
            if (A.degree(g) == -1 && acts_nontrivially(*reg.module[c], g)) acts = true;
    }
    r.add("kg.phi_dagger_regular", "some phi_dagger acts nontrivially in the regular representation", acts);

    auto res = change_of_net_res(regular_rep(kg->reduced, 3), kg->phi);
    bool zero = true;
    json witness;
    for (std::size_t c = 0; c < res.module.size(); ++c) {
        const auto& A = *kg->tilde.algebra[c];
        for (std::size_t g = 0; g < A.num_generators(); ++g)
            if (A.degree(g) == -1 && acts_nontrivially(*res.module[c], g)) {
                zero = false;
                witness = A.name(g) + " at " + kg->tilde.site.objects[c];
            }
    }
    r.add("kg.phi_dagger_restricted", "every phi_dagger acts as zero on restricted representations", zero, 0, witness);

    // free representation generated in degree 0 at the smallest slab
    std::vector<CochainComplex> V(kg->grids.size());
    GradedSpace v;
    v.basis[0] = {"v"};
    V[0] = CochainComplex(v, {});
    auto F = free_rep(kg->tilde, V, 2);
    r.add("kg.quillen_unit", "the derived unit of restriction/extension along the comparison is a weak equivalence",
          quillen_unit_check_net(F, kg->phi, 2));

    // tau agrees with minus the massless Green pairing
    SplineSpace G(1, -1, kg->grids[top]);
    double dev = 0;
    const auto& A = *kg->tilde.algebra[top];
    for (std::size_t a = 0; a < G.dim(); ++a)
        for (std::size_t b = 0; b < G.dim(); ++b) {
            auto p = leg_transform(NumProfile::from(G.basis(a)), 0), q = leg_transform(NumProfile::from(G.basis(b)), 0);
            double t = A.tau(A.index("phi" + std::to_string(a)), A.index("phi" + std::to_string(b))).re().get_d();
            dev = std::max(dev, std::abs(t + green_pair(Sector{0, 0}, p, q)));
        }
    r.within("kg.tau_green", "tau(phi_a, phi_b) = -<G phi_a, phi_b> for the massless propagator", dev,
             cfg.tolerance("green"));
    return r;
}

}  // namespace hqft::maxwell
