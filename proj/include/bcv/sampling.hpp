#pragma once

#include <random>
#include <span>
#include <vector>

#include "bcv/fieldlang.hpp"

namespace bcv {

using Rng = std::mt19937_64;

enum class VarSet { Holomorphic, Antiholomorphic, Both };

Complex random_complex(Rng& rng, double radius);

/// A point of length 2n. On the real slice zb = conj(z); otherwise zb is drawn independently.
std::vector<Complex> random_point(Rng& rng, int n, double radius, bool real_slice = true);

/// Dense polynomial of total degree <= degree with coefficients in the complex box of `scale`.
Expr random_polynomial(Rng& rng, int n, int degree, double scale, VarSet vars = VarSet::Both);

/// Random smooth expression using every grammar construct. Denominators and logarithm
/// arguments are kept at modulus >= 0.5 at `point` by rejection.
Expr random_expression(Rng& rng, int n, int depth, std::span<const Complex> point);

}  // namespace bcv
