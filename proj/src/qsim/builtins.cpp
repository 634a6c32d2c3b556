#include <cmath>
#include <numbers>
#include <string>

#include "ilab/core/errors.hpp"
#include "ilab/qsim/qsim.hpp"

namespace ilab::qsim {

namespace {

using Complex = std::complex<double>;

/// U (x) I on index (x) answer (x) work, where `index_op` acts on the index register only.
CMatrix on_index(const RegisterLayout& layout, const CMatrix& index_op) {
  const int d = layout.dimension();
  CMatrix m = CMatrix::Zero(d, d);
  for (int col = 0; col < d; ++col) {
    const int i = layout.index_of(col), a = layout.answer_of(col), w = layout.work_of(col);
    for (int j = 0; j < layout.n_index; ++j) {
      if (index_op(j, i) != 0.0) m(layout.basis(j, a, w), col) = index_op(j, i);
    }
  }
  return m;
}

CMatrix on_answer(const RegisterLayout& layout, const CMatrix& answer_op) {
  const int d = layout.dimension();
  CMatrix m = CMatrix::Zero(d, d);
  for (int col = 0; col < d; ++col) {
    const int i = layout.index_of(col), a = layout.answer_of(col), w = layout.work_of(col);
    for (int b = 0; b < 2; ++b) {
      if (answer_op(b, a) != 0.0) m(layout.basis(i, b, w), col) = answer_op(b, a);
    }
  }
  return m;
}

/// |0> -> |->, |1> -> |+>: X followed by Hadamard.
CMatrix minus_prep() {
  const double r = 1.0 / std::sqrt(2.0);
  CMatrix m(2, 2);
  m << r, r, -r, r;
  return m;
}

/// Hadamard on span{|2j>, |2j+1>} of the index register, identity elsewhere.
CMatrix pair_hadamard(int n, int j) {
  const double r = 1.0 / std::sqrt(2.0);
  CMatrix m = CMatrix::Identity(n, n);
  m(2 * j, 2 * j) = r;
  m(2 * j, 2 * j + 1) = r;
  m(2 * j + 1, 2 * j) = r;
  m(2 * j + 1, 2 * j + 1) = -r;
  return m;
}

std::vector<bool> accept_where(const RegisterLayout& layout, const std::function<bool(int, int, int)>& pred) {
  std::vector<bool> accept(layout.dimension());
  for (int c = 0; c < layout.dimension(); ++c) {
    accept[c] = pred(layout.index_of(c), layout.answer_of(c), layout.work_of(c));
  }
  return accept;
}

}  // namespace

Unitary permutation(const RegisterLayout& layout, const std::function<int(int)>& map) {
  const int d = layout.dimension();
  CMatrix m = CMatrix::Zero(d, d);
  std::vector<bool> hit(d, false);
  for (int c = 0; c < d; ++c) {
    const int target = map(c);
    if (target < 0 || target >= d || hit[target]) throw InputError("basis map is not a bijection");
    hit[target] = true;
    m(target, c) = 1.0;
  }
  // a bijection on basis states is unitary by construction
  return Unitary(std::move(m), Unitary::Trusted{});
}

Algorithm serial_read(const TruthTable& f) {
  const int n = f.n();
  if (n > kMaxSerialReadVars) {
    throw CapacityError("serial_read needs 2^n work states; limited to n <= " + std::to_string(kMaxSerialReadVars));
  }
  const RegisterLayout layout{n, 1 << n};
  layout.validate();
  std::vector<Step> steps;
  for (int t = 0; t < n; ++t) {
    steps.emplace_back(Query{});
    // Swap the answer into work bit t, then move the index on to t + 1.
    steps.emplace_back(permutation(layout, [&](int c) {
      int i = layout.index_of(c), a = layout.answer_of(c), w = layout.work_of(c);
      const int bit = (w >> t) & 1;
      w = (w & ~(1 << t)) | (a << t);
      a = bit;
      if (t + 1 < n) {
        if (i == t) {
          i = t + 1;
        } else if (i == t + 1) {
          i = t;
        }
      }
      return layout.basis(i, a, w);
    }));
  }
  auto accept = accept_where(layout, [&](int, int, int w) { return f[static_cast<std::uint32_t>(w)]; });
  return Algorithm("serial_read", layout, std::move(steps), std::move(accept));
}

Algorithm deutsch_parity(int n) {
  if (n < 2 || n % 2 != 0) throw InputError("deutsch_parity needs an even n >= 2");
  const RegisterLayout layout{n, 2};
  layout.validate();
  const int pairs = n / 2;
  std::vector<Step> steps;
  steps.emplace_back(Unitary(on_index(layout, pair_hadamard(n, 0)) * on_answer(layout, minus_prep())));
  for (int j = 0; j < pairs; ++j) {
    steps.emplace_back(Query{});
    // The index now holds (|2j> + (-1)^p |2j+1>)/sqrt2 with p the parity so far.
    const CMatrix undo = on_index(layout, pair_hadamard(n, j));
    if (j + 1 < pairs) {
      CMatrix shift = CMatrix::Zero(n, n);
      for (int i = 0; i < n; ++i) {
        int target = i;
        if (i / 2 == j) target = i + 2;
        if (i / 2 == j + 1) target = i - 2;
        shift(target, i) = 1.0;
      }
      steps.emplace_back(Unitary(on_index(layout, pair_hadamard(n, j + 1) * shift) * undo));
    } else {
      const CMatrix copy = permutation(layout, [&](int c) {
        const int i = layout.index_of(c), a = layout.answer_of(c), w = layout.work_of(c);
        return layout.basis(i, a, w ^ (i & 1));
      }).matrix();
      steps.emplace_back(Unitary(copy * undo));
    }
  }
  auto accept = accept_where(layout, [](int, int, int w) { return w == 1; });
  return Algorithm("deutsch_parity", layout, std::move(steps), std::move(accept));
}

Algorithm grover(int n, int iterations) {
  if (n < 1) throw InputError("grover needs n >= 1");
  if (iterations < 0) throw InputError("iteration count must be nonnegative");
  const RegisterLayout layout{n, 1};
  layout.validate();

  CMatrix fourier(n, n);
  for (int j = 0; j < n; ++j) {
    for (int k = 0; k < n; ++k) {
      fourier(j, k) = std::polar(1.0 / std::sqrt(static_cast<double>(n)), 2.0 * std::numbers::pi * j * k / n);
    }
  }
  const CMatrix diffusion = CMatrix::Constant(n, n, Complex(2.0 / n, 0.0)) - CMatrix::Identity(n, n);
  const CMatrix prep = minus_prep();

  std::vector<Step> steps;
  if (iterations == 0) {
    steps.emplace_back(Unitary(on_index(layout, fourier)));
  } else {
    steps.emplace_back(Unitary(on_index(layout, fourier) * on_answer(layout, prep)));
    for (int r = 0; r < iterations; ++r) {
      steps.emplace_back(Query{});
      CMatrix u = on_index(layout, diffusion);
      if (r + 1 == iterations) u = on_answer(layout, prep.adjoint()) * u;
      steps.emplace_back(Unitary(std::move(u)));
    }
  }
  steps.emplace_back(Query{});
  auto accept = accept_where(layout, [](int, int a, int) { return a == 1; });
  return Algorithm("grover", layout, std::move(steps), std::move(accept));
}

}  // namespace ilab::qsim
