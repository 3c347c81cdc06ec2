#pragma once

#include <array>
#include <map>

#include "qha/linalg.hpp"

namespace qha {

// Z-graded complex with degree +1 differentials, finitely supported.
// Absent degrees are zero spaces; differential(n) materializes a zero map
// with the right endpoints.  validate() checks shapes and d∘d = 0.
struct CochainComplex {
  std::map<int, Space> components;
  std::map<int, LinearMap> differentials;  // key n holds d : C^n -> C^{n+1}

  Space component(int n) const;
  LinearMap differential(int n) const;
  // smallest window [lo, hi] containing all nonzero components; {0, -1}
  // (empty) for the zero complex
  std::pair<int, int> degree_window() const;
  void set_differential(int n, LinearMap d);
  void validate() const;
};

// Degree-0 map of complexes; validate() checks commutation with d.
struct ComplexMap {
  CochainComplex source, target;
  std::map<int, LinearMap> layers;

  LinearMap layer(int n) const;
  void set_layer(int n, LinearMap f);
  void validate() const;
};

ComplexMap identity_map(const CochainComplex& c);
ComplexMap compose_maps(const ComplexMap& g, const ComplexMap& f);
bool same_map(const ComplexMap& a, const ComplexMap& b);

std::map<int, int> cohomology_dims(const CochainComplex& c);

// H^n presented as a quotient of the cocycle space Z^n = ker d^n:
// z_inclusion embeds Z^n into C^n, projection maps Z^n onto H^n.
struct CohomologySpace {
  Space h;
  LinearMap z_inclusion;
  LinearMap projection;
};
CohomologySpace cohomology_at(const CochainComplex& c, int n);

// Map induced by a chain map on H^n (both cohomologies in quotient
// coordinates as above).
LinearMap induced_h_map(const ComplexMap& f, int n);

struct QuasiIsoReport {
  bool ok = true;
  // degree -> (dim H source, dim H target, induced map bijective)
  std::map<int, std::array<int, 3>> degrees;
};
QuasiIsoReport is_quasi_iso(const ComplexMap& f);

// Cone^n = C^{n+1} ⊕ D^n for f : C -> D, d(x,y) = (-dx, f(x)+dy);
// shifted source labels carry an "s:" prefix.  f is a quasi-isomorphism
// iff the cone is acyclic.
CochainComplex cone(const ComplexMap& f);

// Block layout of a tensor product of complexes: per total degree, the
// ordered list {p, q, offset, dim A^p, dim B^q}, p increasing.
struct TensorLayout {
  std::map<int, std::vector<std::array<int, 5>>> blocks;
};
TensorLayout tensor_layout(const CochainComplex& a, const CochainComplex& b);

// Graded tensor product, d(a⊗b) = da⊗b + (-1)^{deg a} a⊗db.
CochainComplex tensor_complexes(const CochainComplex& a,
                                const CochainComplex& b);

// f⊗g for degree-0 chain maps, blockwise kron in the layout above.
ComplexMap tensor_map(const ComplexMap& f, const ComplexMap& g);

// Exterior-algebra complex on n generators: Λ^ℓ in degree -ℓ, labels like
// "e1∧e3" ("1" in degree 0), d omitting one generator at a time with
// alternating signs.  Acyclic in every degree.
CochainComplex lambda_complex(int n);

// Contracting homotopy layers h : C^m -> C^{m-1} with d∘h + h∘d = id;
// wedging with (e1+...+en)/n.
std::map<int, LinearMap> lambda_contracting_homotopy(int n);

// The comparison maps between exterior complexes: β splits V⊕W wedges into
// V- and W-parts, Ψ collapses onto one generator, σ merges two generators.
// All chain maps by construction; commutation:
// σ ∘ (Ψ_V⊗Ψ_W) ∘ β = Ψ_{V⊕W}.
struct LambdaMaps {
  ComplexMap beta;     // Λ(V⊕W) -> Λ(V)⊗Λ(W)
  ComplexMap psi_v;    // Λ(V) -> Λ(U₁)
  ComplexMap psi_w;    // Λ(W) -> Λ(U₁)
  ComplexMap psi_vw;   // Λ(V⊕W) -> Λ(U₁)
  ComplexMap sigma;    // Λ(U₁)⊗Λ(U₁) -> Λ(U₁)
  bool commutation = false;
};
LambdaMaps lambda_maps(int n, int m);

}  // namespace qha
