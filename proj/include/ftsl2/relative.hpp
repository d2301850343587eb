#pragma once

#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "ftsl2/backend.hpp"
#include "ftsl2/sinvariants.hpp"

namespace ftsl2 {

enum class RelCase { NoTorsion, Field, Split };
enum class Regularity { NotApplicable, R1, R2, Violated };
std::string to_string(RelCase c);
std::string to_string(Regularity r);

// L = K(zeta) for t = zeta + 1/zeta in K and zeta not in K. Elements of L are
// written a + b zeta with a, b in K; conj sends zeta to 1/zeta.
class RelativeField {
public:
    static std::shared_ptr<const RelativeField> build(const FieldPtr& K, const NFElement& t, unsigned ell);

    const NumberField& base() const { return *K_; }
    const FieldPtr& field() const { return L_; }
    const NFElement& zeta() const { return zeta_; }
    const NFElement& trace() const { return t_; }

    NFElement embed(const NFElement& a) const;
    std::pair<NFElement, NFElement> split(const NFElement& x) const;
    NFElement join(const NFElement& a, const NFElement& b) const { return embed(a) + embed(b) * zeta_; }
    NFElement conj(const NFElement& x) const;
    // x conj(x), as an element of K
    NFElement norm(const NFElement& x) const;
    // base change K -> L, ideal conjugation, relative norm (prime by prime)
    Ideal extend(const Ideal& I) const;
    Ideal conjugate(const Ideal& A) const;
    Ideal norm(const Ideal& A) const;

private:
    FieldPtr K_, L_;
    NFElement t_, zeta_;
    RatMatrix M_, Minv_;  // rows of M_: theta^i, theta^i zeta in L power coordinates
    RatMatrix conj_;      // on the integral basis of L
};

struct RelativeSetup {
    FieldPtr K;                       // null for extension fixtures (no field in process)
    const Fixture* fixture = nullptr; // ingested class and unit data for (K, S)
    PlaceSet S;
    std::vector<Int> places;          // rational primes defining S
    unsigned ell = 3;
    std::optional<NFElement> t;
    std::optional<NFElement> zeta_in_K;
    RelCase kind = RelCase::NoTorsion;
    Regularity regularity = Regularity::NotApplicable;
    std::string violation;            // reason, when Violated
    Int offending_prime = 0;
    std::vector<std::string> notes;
    size_t degree() const;
    std::string label;
};

RelativeSetup build_setup(const FieldPtr& K, const std::vector<Int>& places, unsigned ell);
// Setup for an ingested extension fixture, where ell must satisfy the split case.
RelativeSetup build_setup_from_fixture(const Fixture& f, unsigned ell);
void require_regular(const RelativeSetup& s);

struct NormMapsData {
    Provenance provenance = Provenance::Computed;
    FinGenAbGroup units_K;    // O_{K,S}^x, torsion coordinate first
    FinGenAbGroup units_R;    // R^x
    IntMatrix nm1;            // row i: Nm1 of the i-th generator of R^x
    HomKernel ker_nm1;
    Cokernel coker_nm1;
    std::optional<FiniteAbelianGroup> pic_K;  // absent for capitulation-only fixtures
    FiniteAbelianGroup pic_R;
    IntMatrix nm0;
    HomKernel ker_nm0;

    std::shared_ptr<const SArithmetic> arith_K, arith_L;
    std::shared_ptr<const RelativeField> rel;

    Int ker_nm1_torsion() const;  // m
    size_t ker_nm1_rank() const { return ker_nm1.group.free_rank; }
};

NormMapsData norm_maps(const RelativeSetup& s, ClassGroupOptions opts = {});

// An oriented relative ideal (A, a): A an ideal of L and a in K generating N(A)
// S-locally. Equivalent to (x A, N(x) a).
struct OrientedIdeal {
    Ideal ideal;
    NFElement orientation;
};

struct OrientedClassGroup {
    FiniteAbelianGroup carrier;
    FiniteAbelianGroup sub;       // coker Nm1 (R1) or trivial (R2)
    FiniteAbelianGroup quotient;  // ker Nm0 (R1) or Pic (R2)
    std::vector<size_t> iota;     // permutation of carrier indices
    std::vector<OrientedIdeal> reps;  // R1 only, one per carrier index
    Provenance provenance = Provenance::Computed;
    size_t size() const { return carrier.size(); }
};

// R1: carrier built from generators of ker Nm0 and coker Nm1 with the
// relations e_j k_j = [n_j^e_j / N(beta_j)].
class OrientedArithmetic {
public:
    OrientedArithmetic(const RelativeSetup& s, const NormMapsData& nm);
    const FiniteAbelianGroup& carrier() const { return ck_.group.torsion; }
    IntVec dlog(const OrientedIdeal& x) const;
    OrientedIdeal representative(const IntVec& g) const;
    OrientedIdeal iota(const OrientedIdeal& x) const;

private:
    const NormMapsData& nm_;
    const RelativeField& rel_;
    const SArithmetic& AK_;
    const SArithmetic& AL_;
    std::vector<Ideal> kid_;       // ideals for the ker Nm0 generators
    std::vector<NFElement> kn_;    // S-generators of their norms
    IntMatrix pic_solve_;          // ker generators then Pic_L relations
    size_t q_ = 0, s_ = 0;
    Cokernel ck_;
};

OrientedClassGroup oriented_class_group(const RelativeSetup& s, const NormMapsData& nm);

}  // namespace ftsl2
