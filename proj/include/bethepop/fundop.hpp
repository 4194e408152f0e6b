#pragma once

#include <vector>

#include "bethepop/population.hpp"
#include "bethepop/report.hpp"

namespace bp {

// a with lambda_base - lambda_node = sum_i a_i alpha_i
std::vector<Rational> alpha_coordinates(const RootSystem& rs, const WeightVec& base, const WeightVec& node);

// staircase words (i-1, i-2, ..., 1), 0-based letters, i = 1..N+1
std::vector<WeylWord> staircase_words(int N);

struct KernelBasis {
  std::vector<QPoly> us;        // Trig
  std::vector<ExpPoly> eus;     // Exp
  std::vector<DiscreteExpPoly> dus;  // Xxx
  std::vector<WeylWord> words;
};

// u_i = x^{a_1(node)} * (first polynomial of node y^{(i-1,...,1)}); throws MissingNode
KernelBasis kernel_basis(const Population& pop);
Report verify_reconstruction(const KernelBasis& kb, const Population& pop);
Report kernel_shape_check(const KernelBasis& kb, const Population& pop);
Report full_wronskian_check(const KernelBasis& kb, const Population& pop);
// operator independence along every edge, as an identity of quasi-polynomials
Report same_middle_check(const Population& pop);

Report exp_kernel_checks(const Population& pop);
Report xxx_frame_check(const Population& pop);

// all checks applicable to the population's family
Report kernel_checks(const Population& pop);

}  // namespace bp
