// Acceptance run: one PASS/FAIL line per criterion, nonzero exit on any failure.

#include "logconn/birkhoff.hpp"
#include "logconn/castling.hpp"
#include "logconn/extension.hpp"
#include "logconn/filtrations.hpp"
#include "logconn/jordan.hpp"
#include "logconn/saito.hpp"
#include "support/corpus.hpp"
#include "support/filtration_census.hpp"
#include "support/flatness_oracle.hpp"
#include "support/lattice_oracle.hpp"

#include <algorithm>
#include <chrono>
#include <cstdio>
#include <functional>
#include <iostream>
#include <sstream>

using namespace logconn;

namespace {

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point t0) { return std::chrono::duration<double>(Clock::now() - t0).count(); }

struct Verdict {
    bool pass = true;
    std::ostringstream note;
    void require(bool ok, const std::string& what) {
        if (!ok && pass) note << "failed: " << what << "; ";
        pass = pass && ok;
    }
};

SaitoSystem coordinate_hyperplanes(std::size_t n) {
    SaitoSystem s;
    s.divisor = MultiPoly(Rational(1), n);
    for (std::size_t i = 0; i < n; ++i) {
        s.divisor = s.divisor * MultiPoly::variable(i, n);
        VectorField v;
        v.coeffs.assign(n, MultiPoly(Rational(0), n));
        v.coeffs[i] = MultiPoly::variable(i, n);
        s.fields.push_back(v);
    }
    return s;
}

void criterion1(Verdict& v) {
    auto t0 = Clock::now();
    SaitoSystem s = castled_saito_system(3);
    auto u = [](std::size_t i) { return MultiPoly::variable(i, 6); };
    MultiPoly sextic = (u(0) * u(3) - u(1) * u(2)) * (u(2) * u(5) - u(3) * u(4)) * (u(4) * u(1) - u(5) * u(0));
    v.require(s.divisor == sextic, "divisor is the minor-product sextic");
    v.require(s.fields.size() == 6, "six fields");
    SaitoResult r = saito_check(s);
    v.require(r.free, "free");
    v.require(r.unit != 0, "nonzero unit");
    v.require(det_cofactor(s.saito_matrix()) == r.determinant, "cofactor determinant agrees");
    double secs = seconds_since(t0);
    v.require(secs < 10.0, "runtime under 10 s");
    v.note << "unit " << to_string(r.unit) << ", " << secs << " s";
}

void criterion2(Verdict& v) {
    for (std::size_t n = 2; n <= 5; ++n) {
        SaitoResult r = saito_check(coordinate_hyperplanes(n));
        v.require(r.free && r.unit == 1, "coordinate hyperplanes n=" + std::to_string(n));
    }
    v.note << "n = 2..5 free with unit 1";
}

void criterion3(Verdict& v) {
    corpus::Rng rng(2024);
    int done = 0, failures = 0;
    while (done < 200) {
        std::size_t n = 1 + static_cast<std::size_t>(done % 5);
        QMatrix m = done % 2 ? corpus::random_invertible(rng, n) : corpus::random_jordan_type(rng, n);
        if (det(m) == 0) continue;
        JCPair jc = jordan_chevalley(m);
        bool ok = jc.S * jc.U == m && jc.U * jc.S == m && is_squarefree(minimal_polynomial(jc.S)) &&
                  is_unipotent(jc.U) && is_polynomial_in(jc.S, m);
        failures += !ok;
        ++done;
    }
    v.require(failures == 0, "Jordan-Chevalley identities");
    v.note << done << " matrices, " << failures << " failures";
}

void criterion4(Verdict& v) {
    auto fixtures = corpus::finite_order_fixtures();
    std::vector<long> orders;
    for (const QMatrix& s : fixtures) {
        CentralLog cl = central_log(s);
        ProjectorCheck chk = verify_central_log(s, cl);
        v.require(chk.resolution && chk.orthogonal && chk.eigen, "projector identities");
        orders.push_back(cl.weights.field_order);
    }
    for (long o : {1L, 2L, 3L, 4L, 6L})
        v.require(std::find(orders.begin(), orders.end(), o) != orders.end(), "order " + std::to_string(o) + " covered");
    v.require(!well_behaved_check(QMatrix{{-1, 0}, {0, -1}}, GroupKind::SL), "-I has no central log in SL(2)");
    v.note << fixtures.size() << " fixtures; -I in SL(2) rejected";
}

void criterion5(Verdict& v) {
    auto t0 = Clock::now();
    corpus::Rng rng(5150);
    int mismatches = 0;
    for (int t = 0; t < 100; ++t) {
        std::size_t m = 1 + static_cast<std::size_t>(t % 3);
        auto planted = corpus::planted_birkhoff(rng, m, 1 + t % 4);
        BirkhoffFactors f = birkhoff_factorize(planted.T);
        bool ok = f.exponents == planted.exponents && f.minus * f.diag * f.plus == planted.T &&
                  verify_birkhoff(planted.T, f) && splitting_type_rank_oracle(planted.T) == f.exponents;
        mismatches += !ok;
    }
    double secs = seconds_since(t0);
    v.require(mismatches == 0, "planted factorizations recovered");
    v.require(secs < 60.0, "runtime under 60 s");
    v.note << "100 instances, " << mismatches << " mismatches, " << secs << " s";
}

void criterion6(Verdict& v) {
    LaurentMatrix t = corpus::nonsplit_extension_transition();
    BirkhoffFactors f = birkhoff_factorize(t);
    std::vector<int> type = f.exponents;
    std::sort(type.begin(), type.end());
    v.require(type == std::vector<int>{1, 1}, "splitting type {1,1}");
    v.require(type != std::vector<int>{0, 2}, "differs from {0,2}");
    v.require(verify_birkhoff(t, f), "exact reconstruction");
    v.require(splitting_type_rank_oracle(t) == f.exponents, "rank oracle");
    std::vector<int> split = birkhoff_factorize(corpus::split_extension_transition()).exponents;
    std::sort(split.begin(), split.end());
    v.require(split == std::vector<int>{0, 2}, "split extension gives {0,2}");
    v.note << "extension class gives {1,1}, split sum gives {0,2}";
}

void criterion7(Verdict& v) {
    corpus::Rng rng(7007);
    int extended = 0, total = 0;
    for (int t = 0; t < 60; ++t) {
        std::size_t rank = 1 + static_cast<std::size_t>(t % 2);
        ConnectionData d = t % 2 ? corpus::random_cusp_connection(rng, rank) : corpus::random_cross_connection(rng, rank);
        ++total;
        try {
            ExtendedConnection ext = extend_connection(d);
            bool ok = flatness_check(ext.global).flat && verify_extension(d, ext) &&
                      oracle::flat_at_points(ext.global, rng, 2);
            extended += ok;
        } catch (const AlgebraError& e) {
            v.note << "instance " << t << ": " << e.what() << "; ";
        }
    }
    v.require(total >= 50 && extended == total, "every instance extends");
    v.note << extended << "/" << total << " extended (cross and cusp, rank <= 2)";
}

void criterion8(Verdict& v) {
    corpus::Rng rng(8080);
    int pair_failures = 0;
    for (int t = 0; t < 100; ++t) {
        std::size_t m = 1 + static_cast<std::size_t>(t % 5);
        Filtration f1 = corpus::random_filtration(rng, m), f2 = corpus::random_filtration(rng, m);
        try {
            AdaptedBasis b = split_pair(f1, f2);
            pair_failures += !census::independently_adapted(b.vectors, {f1, f2});
        } catch (const AlgebraError&) {
            ++pair_failures;
        }
    }
    v.require(pair_failures == 0, "random pairs split");

    std::size_t checked = 0, disagreements = 0;
    for (std::size_t m = 1; m <= 3; ++m) {
        auto chains = census::grid_chains(m);
        for (std::size_t a = 0; a < chains.size(); ++a)
            for (std::size_t b = a; b < chains.size(); ++b)
                for (std::size_t c = b; c < chains.size(); ++c) {
                    std::vector<Filtration> fs = {census::from_chain(m, chains[a]), census::from_chain(m, chains[b]),
                                                  census::from_chain(m, chains[c])};
                    disagreements += simultaneous_split(fs).splittable() != oracle::splittable_by_lattice(fs);
                    ++checked;
                }
    }
    v.require(disagreements == 0, "census agrees with the lattice oracle");

    auto line = [](QVector vec) { return Filtration(2, {{1, Subspace::span({vec}, 2)}}); };
    SplitResult three = simultaneous_split({line({1, 0}), line({0, 1}), line({1, 1})});
    v.require(!three.splittable() && three.certificate.has_value(), "three lines not splittable");
    v.note << "100 pairs, census " << checked << " tuples, three lines give a certificate";
}

void criterion9(Verdict& v) {
    PrehomDescriptor d{3, 1, {GroupFactor::torus(3)}, Side::Primal};
    v.require(castling_transform(castling_transform(d)) == d, "involution");
    v.require(castling_chain(d, 2) == std::vector<long>{3, 6, 30}, "chain 3, 6, 30");
    v.require(morita_rescale(1, 3, Rational(1)) == make_rational(-1, 2), "rescale(1,3,1) = -1/2");
    bool roundtrip = true;
    for (long n = 2; n <= 12; ++n)
        for (long r = 1; r < n; ++r) {
            Rational f = make_rational(r, r - n) * make_rational(n - r, (n - r) - n);
            roundtrip = roundtrip && f == 1 && morita_rescale(n - r, n, morita_rescale(r, n, Rational(1))) == 1;
        }
    v.require(roundtrip, "round-trip factor is 1");
    v.note << "involution, chain [3, 6, 30], rescale -1/2, round trip 1";
}

void criterion10(Verdict& v) {
    NonExtendable a = gen_nonextendable(sl2_fundamental(), 3, 2);
    NonExtendable b = gen_nonextendable(sl2_adjoint(), 3, 3);
    v.require(!a.certificate.residual_trivial && !residual_sl_trivial(a.rep), "fundamental rep fails the test");
    v.require(!b.certificate.residual_trivial && !residual_sl_trivial(b.rep), "adjoint rep fails the test");
    v.require(!chevalley_violation(sl2_adjoint(), 3, 3), "adjoint brackets hold");
    ResidueRep pulled = pullback_residue({QMatrix{{1, 0}, {0, 2}}, QMatrix(2, 2), QMatrix{{0, 0}, {0, 5}}}, 3, 2);
    v.require(residual_sl_trivial(pulled), "pulled-back rep passes");
    v.note << "generators " << a.certificate.generator_name << ", " << b.certificate.generator_name
           << "; pulled-back rep trivial";
}

}  // namespace

int main() {
    std::vector<std::function<void(Verdict&)>> criteria = {criterion1, criterion2, criterion3, criterion4,
                                                           criterion5, criterion6, criterion7, criterion8,
                                                           criterion9, criterion10};
    int failed = 0;
    for (std::size_t i = 0; i < criteria.size(); ++i) {
        Verdict v;
        try {
            criteria[i](v);
        } catch (const std::exception& e) {
            v.pass = false;
            v.note << "exception: " << e.what();
        }
        std::cout << (v.pass ? "PASS" : "FAIL") << " criterion " << (i + 1) << ": " << v.note.str() << std::endl;
        failed += !v.pass;
    }
    return failed == 0 ? 0 : 1;
}
