#pragma once

// Independent reference computations used by the unit and acceptance tests.
// Nothing here calls into the measure implementations; every quantity is
// written out as the defining sum.

#include <cstddef>
#include <random>
#include <vector>

#include "morphcomp/measures.hpp"
#include "morphcomp/prob.hpp"
#include "morphcomp/rotator.hpp"

namespace morph::testing {

/// Random probability vector; with `zero_chance` > 0 some entries are zeroed
/// (at least one entry stays positive).
std::vector<double> random_simplex(std::mt19937_64& rng, std::size_t n, double zero_chance = 0.0);

/// `rows` independent random simplices laid out row-major.
std::vector<double> random_rows(std::mt19937_64& rng, std::size_t rows, std::size_t n,
                                double zero_chance = 0.0);

Joint3 random_joint(std::mt19937_64& rng, std::size_t nx, std::size_t ny, std::size_t nz);

/// Random model with a strictly positive sensor prior; policy and world model
/// rows may contain zeros.
IntrinsicModel random_model(std::mt19937_64& rng);

// Definitional sums on a joint p(x, y, z), read as p(w, a, w').
double brute_mc_a(const Joint3& j);
double brute_mc_w(const Joint3& j);

/// sum_x,y p(x,y) D(p(z|x,y) || p(z|x)), written with nested loops.
double brute_cmi_zy_given_x(const Joint3& j);

/// 1 - sum_c,a p(c,a) D(do_a(a) || do_c(c)) / ln|S|.
double brute_c_a_deliberative(const std::vector<double>& joint_ca, std::size_t nc, std::size_t na,
                              const Kernel2& do_c, const Kernel2& do_a_kernel);

/// Second-order symplectic (velocity Verlet) integration of the pendulum with
/// constant force, used as a fine-step reference for the RK4 integrator.
rotator::PendulumState verlet(rotator::PendulumState s, double force, const rotator::Config& c,
                              double duration, double h);

}  // namespace morph::testing
