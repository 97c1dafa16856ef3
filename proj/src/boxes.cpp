#include "boxlab/boxes.hpp"

namespace boxlab {

void validate_table(const SingleTable& t) {
  for (int s = 0; s < 2; ++s) {
    for (int o = 0; o < 2; ++o)
      if (t(s, o) < 0 || t(s, o) > 1)
        throw RangeError("table entry t(" + std::to_string(s) + "," + std::to_string(o) +
                         ") = " + to_string(t(s, o)) + " outside [0,1]");
    if (t(s, 0) + t(s, 1) != 1)
      throw NormalizationError("table setting " + std::to_string(s) + " sums to " +
                               to_string(t(s, 0) + t(s, 1)));
  }
}

void validate_box(const Box222& box) {
  for (int x = 0; x < 2; ++x)
    for (int y = 0; y < 2; ++y) {
      Rational sum = 0;
      for (int a = 0; a < 2; ++a)
        for (int b = 0; b < 2; ++b) {
          const Rational& v = box(x, y, a, b);
          if (v < 0 || v > 1)
            throw RangeError("entry (" + std::to_string(x) + std::to_string(y) + std::to_string(a) +
                             std::to_string(b) + ") = " + to_string(v) + " outside [0,1]");
          sum += v;
        }
      if (sum != 1)
        throw NormalizationError("block (x,y) = (" + std::to_string(x) + "," + std::to_string(y) +
                                 ") sums to " + to_string(sum));
    }
}

Box222 make_box(const std::array<Rational, 16>& entries) {
  Box222 box(entries);
  validate_box(box);
  return box;
}

SingleTable marginal_alice(const Box222& box) {
  SingleTable t0 = alice_marginal_at(box, 0), t1 = alice_marginal_at(box, 1);
  if (!(t0 == t1)) throw SignallingError("Alice marginal depends on Bob's setting");
  return t0;
}

SingleTable marginal_bob(const Box222& box) {
  SingleTable t0 = bob_marginal_at(box, 0), t1 = bob_marginal_at(box, 1);
  if (!(t0 == t1)) throw SignallingError("Bob marginal depends on Alice's setting");
  return t0;
}

bool is_no_signalling(const Box222& box) {
  return alice_marginal_at(box, 0) == alice_marginal_at(box, 1) &&
         bob_marginal_at(box, 0) == bob_marginal_at(box, 1);
}

SingleTable deterministic_table(DetStrategy s) {
  SingleTable t;
  for (int x = 0; x < 2; ++x) t(x, s.response(x)) = 1;
  return t;
}

std::array<DetStrategy, 4> all_strategies() {
  return {DetStrategy{0, 0}, DetStrategy{0, 1}, DetStrategy{1, 0}, DetStrategy{1, 1}};
}

Box222 deterministic_box(int alpha, int beta, int gamma, int epsilon) {
  return product_box(deterministic_table({alpha, beta}), deterministic_table({gamma, epsilon}));
}

Box222 pr_box(int alpha, int beta, int gamma) {
  Box222 box;
  for (int x = 0; x < 2; ++x)
    for (int y = 0; y < 2; ++y)
      for (int a = 0; a < 2; ++a)
        for (int b = 0; b < 2; ++b)
          if ((a ^ b) == ((x & y) ^ (alpha & x) ^ (beta & y) ^ gamma)) box(x, y, a, b) = Rational(1, 2);
  return box;
}

Box222 maximally_mixed_box() {
  std::array<Rational, 16> e;
  e.fill(Rational(1, 4));
  return Box222(e);
}

Box222 bb84_box(const Rational& V) {
  if (V <= 0 || V > 1) throw DomainError("V = " + to_string(V) + " outside (0,1]");
  Box222 box;
  for (int x = 0; x < 2; ++x)
    for (int y = 0; y < 2; ++y)
      for (int a = 0; a < 2; ++a)
        for (int b = 0; b < 2; ++b) {
          Rational v = 1;
          if (x == y) v += ((a ^ b ^ (x & y)) ? Rational(-V) : V);
          box(x, y, a, b) = v / 4;
        }
  return box;
}

Box222 example2_box() {
  const Rational e = Rational(1, 8), q = Rational(1, 4), h = Rational(1, 2), f = Rational(5, 8);
  return make_box({f, e, e, e, h, q, q, 0, h, q, q, 0, f, e, e, e});
}

Box222 lro_apply(const Box222& box, const LroRelabeling& r) {
  Box222 out;
  for (int x = 0; x < 2; ++x)
    for (int y = 0; y < 2; ++y)
      for (int a = 0; a < 2; ++a)
        for (int b = 0; b < 2; ++b)
          out(x, y, a, b) = box(x ^ r.flip_x, y ^ r.flip_y, a ^ (r.a_alpha & x) ^ r.a_beta,
                                b ^ (r.b_gamma & y) ^ r.b_epsilon);
  return out;
}

LroRelabeling inverse(const LroRelabeling& r) {
  LroRelabeling inv = r;
  inv.a_beta = (r.a_alpha & r.flip_x) ^ r.a_beta;
  inv.b_epsilon = (r.b_gamma & r.flip_y) ^ r.b_epsilon;
  return inv;
}

Box222 mix(const std::vector<Box222>& boxes, const std::vector<Rational>& weights) {
  if (boxes.size() != weights.size() || boxes.empty())
    throw WeightError("need one weight per box");
  Rational total = 0;
  for (const auto& w : weights) {
    if (w < 0) throw WeightError("negative weight " + to_string(w));
    total += w;
  }
  if (total != 1) throw WeightError("weights sum to " + to_string(total));
  Box222 out;
  for (std::size_t k = 0; k < boxes.size(); ++k)
    for (int i = 0; i < 16; ++i) {
      auto [x, y, a, b] = std::array<int, 4>{i >> 3, (i >> 2) & 1, (i >> 1) & 1, i & 1};
      out(x, y, a, b) += weights[k] * boxes[k](x, y, a, b);
    }
  return out;
}

BoxD to_double(const Box222& box) {
  BoxD out;
  for (int i = 0; i < 16; ++i)
    out(i >> 3, (i >> 2) & 1, (i >> 1) & 1, i & 1) = boxlab::to_double(box.data()[i]);
  return out;
}

}  // namespace boxlab
