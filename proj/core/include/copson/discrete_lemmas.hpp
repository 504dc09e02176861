#pragma once

#include <string>
#include <string_view>
#include <vector>

namespace copson {

// Variants of the geometric-sequence inequalities. P20 needs b_{k+1} >= D b_k
// and sums tails m >= k; P21 needs b_k >= D b_{k+1} and sums heads m <= k.
enum class LemmaVariant { P20Sum, P20SupInner, P20SupSup, P21Sum, P21SupInner, P21SupSup };

LemmaVariant parse_variant(std::string_view name);
std::string to_string(LemmaVariant v);

// Smallest D with the variant's growth condition; throws NotGeometric when it
// is not above 1.
double geometric_ratio(const std::vector<double>& b, LemmaVariant variant);

// LHS / RHS of the variant's inequality for these sequences.
double discrete_lemma_constant(const std::vector<double>& b, const std::vector<double>& c,
                               double alpha, LemmaVariant variant);

// Bound on the constant valid for every admissible pair of sequences with
// ratio D, obtained by summing geometric series.
double discrete_lemma_bound(double alpha, double D, LemmaVariant variant);

// c_k = b_k^{1/(p-q)} / (sum b^{p/(p-q)})^{1/p}; throws DegenerateB when b = 0.
std::vector<double> holder_saturator(const std::vector<double>& b, double p, double q);

}  // namespace copson
