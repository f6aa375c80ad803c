#pragma once

#include <array>
#include <cstdint>
#include <string>

#include "heisenberg.hpp"

// PU(2,1) acting on H u {inf} by fractional linear maps in homogeneous
// coordinates [1 : z : w], where a finite point (z,u) lifts with
// w = -4u + i|z|^2 (the Siegel boundary identification) and infinity lifts
// to [0 : 0 : 1].  Matrices are the canonical representation; generator
// words are only a construction device.

namespace hknot {

struct RandomMobiusOptions {
    double translation_box = 1.5;  // p0 coordinates in [-box, box]
    double log_dilation = 0.7;     // lambda = exp(U(-a, a))
};

class MobiusMatrix {
public:
    // entries in row-major order; normalized so max |entry| = 1
    MobiusMatrix();  // identity
    explicit MobiusMatrix(const std::array<complexd, 9>& entries);

    const complexd& at(int r, int c) const { return m_[3 * r + c]; }

    // Frobenius deviation of M* I_H M from c I_H after fitting c.
    double form_residual() const;

    // verifies the form invariant; throws std::invalid_argument beyond tol
    void require_valid(double tol = 1e-10) const;

    std::string word() const { return word_; }

    friend MobiusMatrix compose(const MobiusMatrix& m1, const MobiusMatrix& m2);
    friend MobiusMatrix mat_translation(const HPoint& p0);
    friend MobiusMatrix mat_dilation(double lambda);
    friend MobiusMatrix mat_rotation(double theta);
    friend MobiusMatrix mat_inversion();
    friend MobiusMatrix random_mobius(std::uint64_t seed, int word_length,
                                      const RandomMobiusOptions& opt);

private:
    void normalize();
    std::array<complexd, 9> m_;
    std::string word_;  // generator word when built from one, else empty
};

// generators; their point actions coincide with the closed-form maps in
// heisenberg.hpp (h_mul, dilate, rotate, invert) -- tested, not assumed
MobiusMatrix mat_translation(const HPoint& p0);
MobiusMatrix mat_dilation(double lambda);
MobiusMatrix mat_rotation(double theta);
MobiusMatrix mat_inversion();

// matrix product m1 * m2 (action: m1 after m2), renormalized
MobiusMatrix compose(const MobiusMatrix& m1, const MobiusMatrix& m2);

// projective action; throws on boundary-preservation failure
ExtendedPoint apply_point(const MobiusMatrix& m, const ExtendedPoint& p);

// deterministic pseudo-random word in the four generator families
MobiusMatrix random_mobius(std::uint64_t seed, int word_length,
                           const RandomMobiusOptions& opt = {});

}  // namespace hknot
