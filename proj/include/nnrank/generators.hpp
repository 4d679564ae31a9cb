#pragma once

#include <cstdint>
#include <random>
#include <string>
#include <string_view>
#include <vector>

#include "nnrank/tensor.hpp"

namespace nnrank {

// Small fixed instances from the literature.
Tensor example1();
// variant_b adds the perturbation entries b_1121 = b_2111 = 0.3.
Tensor example2(bool variant_b = false);
Tensor example3();
Tensor example4();
Tensor example5();
Tensor example6();
Tensor example18();

// Formula families; m is the order, n the dimension.  Families 7-10 are
// symmetric, 11-13 live in the plain m-fold tensor product.
Tensor example7(int m, int n);
Tensor example8(int m, int n);
Tensor example9(int m, int n);
Tensor example10(int m, int n);
Tensor example11(int m, int n);
Tensor example12(int m, int n);
Tensor example13(int m, int n);

// Determinant tensor in the n-fold product of R^n.
Tensor levi_civita(int n);
Tensor permanent(int n);
// Bilinear map of (m x n) * (n x q) matrix products in R^{mq} x R^{mn} x R^{nq}.
Tensor matmul(int m, int n, int q);

// Symmetric tensor with uniform[-1, 1] off-diagonal entries and diagonals
// 1e-6 minus the sum of the negative off-diagonal entries of their slice.
Tensor diag_dominant(int m, int n, std::mt19937_64& rng);
// Symmetric tensor with independent uniform[-1, 1] entries per orbit.
Tensor random_sym(int m, int n, std::mt19937_64& rng);

struct GeneratorSpec {
  std::string family;
  std::vector<int> params;
};

// "family" or "family:p1,p2,...".
GeneratorSpec parse_generator(std::string_view text);

bool is_random_family(const std::string& family);

// Random families draw from the stream derived from (seed, index).
Tensor generate(const GeneratorSpec& spec, std::uint64_t seed = 0, std::uint64_t index = 0);

std::vector<std::string> generator_families();

}  // namespace nnrank
