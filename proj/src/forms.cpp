#include "wres/forms.hpp"

#include <utility>

#include "wres/tensor_parse.hpp"

namespace wres::tensor {

namespace {

Expr P(const std::string& s) { return parse_expr(s); }

Expr mono(std::vector<Factor> fs) {
  Expr e;
  e.add_term(term_of(std::move(fs)), Lin(1));
  return e;
}

Expr lap(Expr e) {
  int l = fresh_label();
  return nabla(nabla(std::move(e), l), l);
}

Lin lin(const Lin& a, long s) { return a * Rational(s); }

Lin add(Lin a, const Lin& b) {
  a += b;
  return a;
}

}  // namespace

Expr omega6_flat_part() {
  // the index rendering, derivative orders as displayed; in a curved
  // metric this differs from the symmetric Delta-rendering by
  // curvature terms, so the two must not be interchanged
  return P(
      "12 f_{;i} h_{;i j j k k} + 12 f_{;i j j k k} h_{;i} "
      "+ 24 f_{;i j} h_{;i j k k} + 24 f_{;i j k k} h_{;i j} "
      "+ 6 f_{;i i} h_{;j j k k} + 6 f_{;i i j j} h_{;k k} "
      "+ 24 f_{;i j j} h_{;i k k} + 16 f_{;i j k} h_{;i j k}");
}

// 12 L^2<df,dh> - 6 L(Lf Lh) - 12 <grad Lf, grad Lh>
// + 24 L<hess f, hess h> + 16 <D^3 f, D^3 h>, where L is the positive
// (Hodge) Laplacian L = -g^{ab} nabla_a nabla_b; in the flat metric
// this rendering has the same coordinate table as omega6_flat_part().
static Expr omega6_flat_delta_rendering() {
  Expr x = P("f_{;a} h_{;a}");
  Expr out = lap(lap(x)).scaled(12);          // (-1)^2 L^2
  out.add(lap(P("f_{;a a} h_{;b b}")).scaled(6));   // -6 (-1)^3
  out.add(P("-12 f_{;a a b} h_{;c c b}"));          // (-1)^2 on Lf, Lh
  out.add(lap(P("f_{;a b} h_{;a b}")).scaled(-24));  // 24 (-1)
  out.add(P("16 f_{;a b c} h_{;a b c}"));
  return out;
}

Expr omega6_conformally_flat() {
  Expr out = omega6_flat_part();
  out.add(P(
      "-72 f_{;i j j} h_{;i} J - 72 f_{;i} h_{;i j j} J "
      "-24 f_{;i i} h_{;j j} J - 96 f_{;i j} h_{;i j} J "
      "+96 f_{;i} h_{;i} J J "
      "+24 f_{;i i} h_{;j} J_{;j} + 24 f_{;i} h_{;j j} J_{;i} "
      "-24 f_{;i j} h_{;i} J_{;j} - 24 f_{;i} h_{;i j} J_{;j} "
      "-24 f_{;i} h_{;i} J_{;j j} "
      "+64 f_{;i} h_{;j} J V_{i j} "
      "-32 f_{;i j j} h_{;k} V_{i k} - 32 f_{;i} h_{;j k k} V_{i j} "
      "+64 f_{;i j k} h_{;i} V_{j k} + 64 f_{;i} h_{;i j k} V_{j k} "
      "+96 f_{;i j} h_{;k k} V_{i j} + 96 f_{;i i} h_{;j k} V_{j k} "
      "-192 f_{;i j} h_{;i k} V_{j k} "
      "-64 f_{;i} h_{;i} V_{j k} V_{j k} "
      "+128 f_{;i} h_{;j} V_{i k} V_{j k}"));
  return out;
}

Expr omega6_conformally_flat_symmetric() {
  Expr x = P("f_{;a} h_{;a}");
  // every displayed L (the positive Laplacian) contributes one minus
  // sign relative to the covariant trace used here
  Expr out = omega6_flat_delta_rendering();
  out.add(lap(x).mul(P("J")).scaled(-72));  // 72 L<df,dh> J
  out.add(P(
      "-24 f_{;i i} h_{;j j} J + 96 f_{;i j} h_{;i j} J "
      "+96 f_{;i} h_{;i} J J - 24 f_{;i} h_{;i} J_{;j j} "
      "+32 h_{;i i} f_{;j k} V_{j k} + 32 f_{;i i} h_{;j k} V_{j k} "
      "-64 f_{;i} h_{;i} V_{j k} V_{j k} "
      "-128 f_{;i} h_{;j} V_{i k} V_{j k} "
      "+64 f_{;a b} h_{;b c} V_{c a}"));
  // +32 <nabla(Lf (x) dh) + nabla(Lh (x) df), V>  (Lf = -f_{;aa})
  out.add(nabla(mono({fac(Head::F, {}, {9, 9}), fac(Head::H, {}, {1})}), 2)
              .mul(mono({fac(Head::V, {1, 2})}))
              .scaled(-32));
  out.add(nabla(mono({fac(Head::H, {}, {9, 9}), fac(Head::F, {}, {1})}), 2)
              .mul(mono({fac(Head::V, {1, 2})}))
              .scaled(-32));
  // +64 <nabla^2 <df,dh>, V>
  out.add(nabla(nabla(x, 1), 2).mul(mono({fac(Head::V, {1, 2})})).scaled(64));
  return out;
}

Expr difference_display() {
  return P(
      "96 f_{;i j} h_{;k l} W_{i l j k} "
      "-32 f_{;i j} h_{;k} W_{i j k l}^{;l} "
      "-32 f_{;i} h_{;j k} W_{i j k l}^{;l}");
}

Expr variation6_display() {
  return P(
      "-32 eta_{;i} f_{;j} h_{;k} W_{i j k l}^{;l} "
      "-32 eta_{;i} f_{;j} h_{;k} W_{i k j l}^{;l} "
      "-32 eta_{;i} f_{;j k} h_{;l} W_{i j k l} "
      "+32 eta_{;i} f_{;j} h_{;k l} W_{i k j l}");
}

Expr coboundary6_display() {
  return P(
      "-96 f0 f1_{;j} f2_{;i} f3_{;k} W_{i j k l}^{;l} "
      "-96 f0 f1_{;j} f2_{;i} f3_{;k} W_{i k j l}^{;l} "
      "+128 f0 f1_{;j k} f2_{;i} f3_{;l} W_{i j k l} "
      "+128 f0 f1_{;j} f2_{;i} f3_{;k l} W_{i k j l}");
}

Expr weyl_ansatz(const Lin& A, const Lin& B, const Lin& C, const Lin& D) {
  Expr out = P("f_{;i j} h_{;k l} W_{i k j l}").scaled(A);
  out.add(P("f_{;i j} h_{;k} W_{i l j k}^{;l} + h_{;i j} f_{;k} W_{i l j k}^{;l}")
              .scaled(B));
  out.add(P("f_{;i} h_{;j} W_{i k j l}^{;k l}").scaled(C));
  out.add(P("f_{;i} h_{;j} V_{k l} W_{i k j l}").scaled(D));
  return out;
}

Expr weyl_ansatz_variation_display(const Lin& A, const Lin& B, const Lin& C,
                                   const Lin& D) {
  Expr out = P("eta_{;i} f_{;j} h_{;k} W_{i j k l}^{;l} "
               "+ eta_{;i} f_{;j} h_{;k} W_{i k j l}^{;l}")
                 .scaled(add(B, lin(C, 2)));
  out.add(P("eta_{;i} f_{;j k} h_{;l} W_{i j k l} "
            "+ eta_{;i} f_{;j} h_{;k l} W_{i l k j}")
              .scaled(add(lin(B, 3), lin(A, -2))));
  out.add(P("eta_{;i j} f_{;k} h_{;l} W_{i k j l}")
              .scaled(add(D, lin(C, -3))));
  return out;
}

Expr coboundary_ansatz_display(const Lin& A, const Lin& B) {
  Expr out = P("f0 f1_{;j} f2_{;i} f3_{;k} W_{i j k l}^{;l} "
               "+ f0 f1_{;j} f2_{;i} f3_{;k} W_{i k j l}^{;l}")
                 .scaled(lin(B, 3));
  out.add(P("f0 f1_{;j k} f2_{;i} f3_{;l} W_{i j k l} "
            "+ f0 f1_{;j} f2_{;i} f3_{;k l} W_{i k j l}")
              .scaled(lin(A, -2)));
  return out;
}

Expr invariant_pair(const Lin& E, const Lin& G) {
  Expr out = P("f_{;i} h_{;i} W_{j k l m} W_{j k l m}").scaled(E);
  out.add(P("f_{;i} h_{;j} W_{i k l m} W_{j k l m}").scaled(G));
  return out;
}

Expr family(const Lin& E, const Lin& G) {
  Expr out = omega6_conformally_flat();
  out.add(weyl_ansatz(Lin(64), Lin(32), Lin(-32), Lin(-96)));
  out.add(invariant_pair(E, G));
  return out;
}

Expr swap_fh(const Expr& e) {
  return rename_head(rename_head(rename_head(e, Head::F, Head::F1), Head::H,
                                 Head::F),
                     Head::F1, Head::H);
}

}  // namespace wres::tensor
