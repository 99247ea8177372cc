#include "modrep/correspondence.hpp"

#include <algorithm>

namespace modrep {

namespace {

std::size_t end_degree_checked(const ModuleRep& s) {
  EndAlgebra end = end_algebra(s);
  const AlgebraData& e = *end.algebra;
  const FieldDesc& f = s.field();
  bool commutative = true;
  for (std::size_t i = 0; i < e.dim() && commutative; ++i)
    for (std::size_t j = i + 1; j < e.dim() && commutative; ++j)
      commutative = e.basis_product(i, j) == e.basis_product(j, i);
  if (!commutative)
    fail(Errc::StructureViolation, "End of a simple module is not commutative");

  std::size_t d = e.dim();
  Matrix frob(f, d, d);
  for (std::size_t j = 0; j < d; ++j) {
    Vec ej(d, Scalar::zero(f));
    ej[j] = Scalar::one(f);
    Vec img = e.unit();
    // e_j^p by binary powering inside E
    {
      Vec base = ej;
      std::uint64_t k = static_cast<std::uint64_t>(f.p());
      img = e.unit();
      while (k > 0) {
        if (k & 1) img = e.multiply(img, base);
        k >>= 1;
        if (k > 0) base = e.multiply(base, base);
      }
    }
    for (std::size_t i = 0; i < d; ++i) frob.at(i, j) = img[i];
  }
  if (!kernel_basis(frob).is_zero())
    fail(Errc::StructureViolation, "Frobenius on End(S) is not injective");
  if (kernel_basis(frob - Matrix::identity(f, d)).dim() != 1)
    fail(Errc::StructureViolation, "End(S) fixed field is not F_p");
  return d;
}

// Decompose the unit along the summand embeddings; component j is the
// projection of 1 onto summand j, which generates it.
std::vector<Vec> unit_components(const AlgebraData& a, const std::vector<Summand>& summands) {
  const FieldDesc& f = a.field();
  std::size_t d = a.dim();
  Matrix cols(f, d, d);
  std::size_t c = 0;
  for (const auto& s : summands) {
    for (std::size_t r = 0; r < s.embedding.dim(); ++r) {
      Vec row = s.embedding.basis().row(r);
      for (std::size_t i = 0; i < d; ++i) cols.at(i, c) = row[i];
      ++c;
    }
  }
  Matrix rhs(f, d, 1);
  for (std::size_t i = 0; i < d; ++i) rhs.at(i, 0) = a.unit()[i];
  auto x = solve(cols, rhs);
  if (!x) fail(Errc::InternalInvariantViolation, "unit is outside the summand span");
  std::vector<Vec> comps;
  c = 0;
  for (const auto& s : summands) {
    Vec comp(d, Scalar::zero(f));
    for (std::size_t r = 0; r < s.embedding.dim(); ++r, ++c) {
      const Scalar& coeff = x->at(c, 0);
      if (coeff.is_zero()) continue;
      Vec row = s.embedding.basis().row(r);
      for (std::size_t i = 0; i < d; ++i) comp[i] += coeff * row[i];
    }
    comps.push_back(std::move(comp));
  }
  return comps;
}

}  // namespace

BijectionTable bijection(AlgebraPtr a, std::uint64_t seed) {
  if (!a->field().is_prime_field())
    fail(Errc::UnsupportedField, "bijection is only available over prime fields");

  RadicalResult rad = algebra_radical(a, derive_seed(seed, 0x0b1));
  std::size_t nilpotency = radical_nilpotency_index(*a, rad.radical);

  std::vector<SimpleRecord> simples;
  for (std::size_t i = 0; i < rad.simples.size(); ++i) {
    simples.push_back(SimpleRecord{rad.simples[i], i, end_degree_checked(rad.simples[i]),
                                   rad.simple_certs[i]});
  }

  ModuleRep reg = regular_module(a);
  DecompositionReport dec =
      indecomposable_decomposition(reg, derive_seed(seed, 0x0b2));
  std::vector<Vec> components = unit_components(*a, dec.summands);

  // Tops classify the summands (Lemma no-share); cross-check against the
  // decomposition's own iso grouping.
  struct SummandInfo {
    std::size_t top_class;
    Subspace maximal;
    std::shared_ptr<ModuleRep> top;
    std::shared_ptr<Certificate> top_cert;
  };
  std::vector<SummandInfo> info;
  for (const auto& s : dec.summands) {
    Subspace maximal = ideal_action(rad.radical, s.module);
    QuotientModule q = quotient_module(s.module, maximal);
    if (q.module.dim() == 0)
      fail(Errc::InternalInvariantViolation, "projective summand has zero top");
    Certificate cert = is_simple(q.module, derive_seed(seed, 0x70b));
    if (!cert.affirms_simple())
      fail(Errc::InternalInvariantViolation, "top of a projective summand is not simple");
    std::size_t cls = simples.size();
    for (const auto& rec : simples) {
      if (iso_simple(q.module, cert, rec.module, rec.simple_cert)) {
        cls = rec.class_id;
        break;
      }
    }
    if (cls == simples.size())
      fail(Errc::InternalInvariantViolation, "top is not on the simple list");
    info.push_back({cls, std::move(maximal), std::make_shared<ModuleRep>(q.module),
                    std::make_shared<Certificate>(cert)});
  }
  for (std::size_t i = 0; i < dec.summands.size(); ++i)
    for (std::size_t j = i + 1; j < dec.summands.size(); ++j) {
      bool same_top = info[i].top_class == info[j].top_class;
      bool same_class = dec.summands[i].class_id == dec.summands[j].class_id;
      if (same_top != same_class)
        fail(Errc::InternalInvariantViolation,
             "top grouping disagrees with Krull-Schmidt grouping");
    }

  // One PimRecord per class, ordered by (dim, discovery).
  std::vector<std::size_t> rep_of_class(dec.class_dims.size(), SIZE_MAX);
  std::vector<std::size_t> mult(dec.class_dims.size(), 0);
  for (std::size_t i = 0; i < dec.summands.size(); ++i) {
    ++mult[dec.summands[i].class_id];
    if (rep_of_class[dec.summands[i].class_id] == SIZE_MAX)
      rep_of_class[dec.summands[i].class_id] = i;
  }

  std::vector<PimRecord> pim_records;
  for (std::size_t cls = 0; cls < rep_of_class.size(); ++cls) {
    std::size_t idx = rep_of_class[cls];
    const Summand& s = dec.summands[idx];
    Vec gen_ambient = components[idx];
    auto gen = s.embedding.coordinates(gen_ambient);
    if (!gen)
      fail(Errc::InternalInvariantViolation, "unit component is outside its summand");
    // The stored representative lives in the embedding's RREF coordinates.
    if (!spin(s.module, *gen).is_full())
      fail(Errc::InternalInvariantViolation, "unit component does not generate its summand");

    ProjectivityResult proj = is_projective(s.module);
    if (!proj.projective())
      fail(Errc::InternalInvariantViolation, "regular-module summand not certified projective");
    Certificate proj_cert{CertProjective{*proj.section}};
    Certificate simple_top_cert{CertIndecSimpleTop{
        *proj.section, rad.radical.space().basis(), info[idx].maximal, info[idx].top_cert}};

    pim_records.push_back(PimRecord{s.module, s.embedding, cls, mult[cls], *gen,
                                    info[idx].top_class, info[idx].maximal, *info[idx].top,
                                    std::move(proj_cert), s.indec_cert,
                                    std::move(simple_top_cert)});
  }

  BijectionTable table{std::move(a),
                       seed,
                       std::move(pim_records),
                       std::move(simples),
                       {},
                       {},
                       rad.radical.space(),
                       nilpotency,
                       {}};

  // Pairing by nonzero Hom; top isomorphism is re-checked in verify_table.
  table.hom_dims.assign(table.pims.size(),
                        std::vector<std::size_t>(table.simples.size(), 0));
  for (std::size_t i = 0; i < table.pims.size(); ++i)
    for (std::size_t j = 0; j < table.simples.size(); ++j)
      table.hom_dims[i][j] = hom_basis(table.pims[i].module, table.simples[j].module).dim();
  table.pairing.assign(table.pims.size(), SIZE_MAX);
  for (std::size_t i = 0; i < table.pims.size(); ++i) {
    for (std::size_t j = 0; j < table.simples.size(); ++j) {
      if (table.hom_dims[i][j] != 0) {
        if (table.pairing[i] != SIZE_MAX)
          fail(Errc::InternalInvariantViolation, "PIM pairs with two simple classes");
        table.pairing[i] = j;
      }
    }
    if (table.pairing[i] == SIZE_MAX)
      fail(Errc::InternalInvariantViolation, "PIM pairs with no simple class");
    if (table.pairing[i] != table.pims[i].top_class_id)
      fail(Errc::InternalInvariantViolation, "Hom pairing disagrees with top pairing");
  }

  table.checks = verify_table(table);
  return table;
}

std::vector<PimRecord> pims(AlgebraPtr a, std::uint64_t seed) {
  return bijection(std::move(a), seed).pims;
}

const ModuleRep& top(const PimRecord& p) { return p.top_module; }

const PimRecord& projective_cover(const BijectionTable& table, const SimpleRecord& s) {
  const PimRecord* found = nullptr;
  for (std::size_t i = 0; i < table.pims.size(); ++i) {
    if (table.hom_dims[i][s.class_id] != 0) {
      if (found)
        fail(Errc::InternalInvariantViolation, "two PIM classes cover one simple");
      found = &table.pims[i];
    }
  }
  if (!found)
    fail(Errc::InternalInvariantViolation, "no PIM class covers the simple");
  return *found;
}

std::vector<std::vector<std::size_t>> hom_dim_matrix(const BijectionTable& table) {
  return table.hom_dims;
}

EndSimpleReport end_simple_structure(const SimpleRecord& s) {
  if (!s.module.field().is_prime_field())
    fail(Errc::UnsupportedField, "end_simple_structure needs a prime field");
  return {end_degree_checked(s.module)};
}

VerificationReport verify_table(const BijectionTable& table) {
  VerificationReport rep;
  auto claim = [&](const std::string& name, bool pass, const std::string& witness = "") {
    rep.claims.push_back({name, pass, pass ? "" : witness});
  };

  claim("count_equal", table.pims.size() == table.simples.size(),
        std::to_string(table.pims.size()) + " PIM classes vs " +
            std::to_string(table.simples.size()) + " simple classes");

  // sigma is a bijection.
  {
    bool ok = true;
    std::string w;
    std::vector<bool> hit(table.simples.size(), false);
    for (std::size_t i = 0; i < table.pims.size(); ++i) {
      std::size_t j = table.pairing.size() > i ? table.pairing[i] : SIZE_MAX;
      if (j >= table.simples.size() || hit[j]) {
        ok = false;
        w = "pim class " + std::to_string(i);
        break;
      }
      hit[j] = true;
    }
    claim("pairing_bijective", ok, w);
  }

  // Hom characterization: nonzero exactly on the matching.
  {
    bool ok = true;
    std::string w;
    for (std::size_t i = 0; i < table.pims.size() && ok; ++i)
      for (std::size_t j = 0; j < table.simples.size() && ok; ++j) {
        bool nonzero = table.hom_dims[i][j] != 0;
        bool matched = i < table.pairing.size() && table.pairing[i] == j;
        if (nonzero != matched) {
          ok = false;
          w = "entry (" + std::to_string(i) + "," + std::to_string(j) + ")";
        }
      }
    claim("hom_pairing", ok, w);
  }

  // Tops match the pairing and separate the PIMs.
  {
    bool ok = true;
    std::string w;
    for (std::size_t i = 0; i < table.pims.size() && ok; ++i) {
      const PimRecord& p = table.pims[i];
      if (p.top_class_id != table.pairing[i]) {
        ok = false;
        w = "pim class " + std::to_string(i);
      }
      const auto* top_cert = std::get_if<CertIndecSimpleTop>(&p.simple_top_cert.payload());
      if (!top_cert || !top_cert->top_simple) {
        ok = false;
        w = "pim " + std::to_string(i) + " carries no top certificate";
        break;
      }
      for (std::size_t j = 0; j < table.simples.size() && ok; ++j) {
        bool iso = iso_simple(p.top_module, *top_cert->top_simple,
                              table.simples[j].module, table.simples[j].simple_cert);
        if (iso != (j == p.top_class_id)) {
          ok = false;
          w = "top of pim " + std::to_string(i) + " vs simple " + std::to_string(j);
        }
      }
    }
    claim("top_pairing", ok, w);
    bool sep = true;
    std::string ws;
    for (std::size_t i = 0; i < table.pims.size() && sep; ++i)
      for (std::size_t k = i + 1; k < table.pims.size() && sep; ++k)
        if (table.pims[i].top_class_id == table.pims[k].top_class_id) {
          sep = false;
          ws = "pims " + std::to_string(i) + "," + std::to_string(k);
        }
    claim("tops_separate", sep, ws);
  }

  // Every PIM is cyclic via its stored generator.
  {
    bool ok = true;
    std::string w;
    for (std::size_t i = 0; i < table.pims.size() && ok; ++i) {
      if (!spin(table.pims[i].module, table.pims[i].generator).is_full()) {
        ok = false;
        w = "pim class " + std::to_string(i);
      }
    }
    claim("pim_cyclic", ok, w);
  }

  // Unique maximal submodule: every nonzero hom to every simple has kernel
  // equal to the stored maximal.
  {
    bool ok = true;
    std::string w;
    for (std::size_t i = 0; i < table.pims.size() && ok; ++i) {
      for (std::size_t j = 0; j < table.simples.size() && ok; ++j) {
        HomBasis h = hom_basis(table.pims[i].module, table.simples[j].module);
        for (std::size_t l = 0; l < h.dim() && ok; ++l) {
          if (kernel_basis(h.basis[l]) != table.pims[i].unique_maximal) {
            ok = false;
            w = "hom " + std::to_string(l) + " from pim " + std::to_string(i);
          }
        }
      }
    }
    claim("unique_maximal", ok, w);
  }

  // Hom dimension law, including the factoring realization phi = psi o pi.
  {
    bool ok = true;
    std::string w;
    for (std::size_t i = 0; i < table.pims.size() && ok; ++i) {
      std::size_t j = table.pairing[i];
      if (table.hom_dims[i][j] != table.simples[j].end_field_degree) {
        ok = false;
        w = "pim " + std::to_string(i) + ": hom dim " +
            std::to_string(table.hom_dims[i][j]) + " != end degree " +
            std::to_string(table.simples[j].end_field_degree);
        break;
      }
      const PimRecord& p = table.pims[i];
      const ModuleRep& s = table.simples[j].module;
      HomBasis tops = hom_basis(p.top_module, s);
      if (tops.dim() == 0 || rref(tops.basis[0]).pivots.size() != s.dim()) {
        ok = false;
        w = "no iso from top of pim " + std::to_string(i);
        break;
      }
      QuotientModule q = quotient_module(p.module, p.unique_maximal);
      Matrix pi = tops.basis[0] * q.projection;  // fixed epi P ->> S
      HomBasis ends = hom_basis(s, s);
      HomBasis homs = hom_basis(p.module, s);
      // psi -> psi o pi must be a bijection End(S) -> Hom(P, S).
      RowReducer image(s.field(), s.dim() * p.module.dim());
      std::size_t rank = 0;
      for (std::size_t l = 0; l < ends.dim(); ++l) {
        if (image.add_row((ends.basis[l] * pi).flat())) ++rank;
      }
      if (rank != ends.dim() || rank != homs.dim()) {
        ok = false;
        w = "composition with pi is not bijective for pim " + std::to_string(i);
      }
    }
    claim("hom_dim_law", ok, w);
  }

  // Tops of projectives are nonzero.
  {
    bool ok = true;
    std::string w;
    for (std::size_t i = 0; i < table.pims.size() && ok; ++i)
      if (table.pims[i].top_module.dim() == 0) {
        ok = false;
        w = "pim class " + std::to_string(i);
      }
    claim("top_nonzero", ok, w);
  }

  return rep;
}

VerificationReport verify_theorems(AlgebraPtr a, std::uint64_t seed) {
  BijectionTable table = bijection(a, seed);
  VerificationReport rep = verify_table(table);
  auto claim = [&](const std::string& name, bool pass, const std::string& witness = "") {
    rep.claims.push_back({name, pass, pass ? "" : witness});
  };

  // Simple coverage: composition factors of the regular module are exactly
  // the table simples (up to isomorphism), and each one occurs.
  {
    ModuleRep reg = regular_module(a);
    CompSeries cs = composition_series(reg, derive_seed(seed, 0xc073));
    bool ok = true;
    std::string w;
    std::vector<bool> seen(table.simples.size(), false);
    for (std::size_t i = 0; i < cs.class_reps.size() && ok; ++i) {
      bool matched = false;
      for (const auto& rec : table.simples) {
        if (iso_simple(cs.class_reps[i], cs.class_certs[i], rec.module, rec.simple_cert)) {
          seen[rec.class_id] = true;
          matched = true;
          break;
        }
      }
      if (!matched) {
        ok = false;
        w = "composition factor of dim " + std::to_string(cs.class_reps[i].dim());
      }
    }
    for (std::size_t j = 0; j < seen.size() && ok; ++j)
      if (!seen[j]) {
        ok = false;
        w = "simple class " + std::to_string(j) + " missing from factors";
      }
    claim("simple_coverage", ok, w);
  }

  // Radical annihilates every simple.
  {
    bool ok = true;
    std::string w;
    for (std::size_t r = 0; r < table.radical_space.dim() && ok; ++r) {
      Vec x = table.radical_space.basis().row(r);
      for (const auto& rec : table.simples) {
        if (!rec.module.action_of(x).is_zero()) {
          ok = false;
          w = "radical element " + std::to_string(r) + " acts nonzero";
          break;
        }
      }
    }
    claim("radical_annihilates_simples", ok, w);
  }

  // Projective + indecomposable <=> simple top, with a constructed negative.
  {
    bool ok = true;
    std::string w;
    for (const auto& p : table.pims) {
      std::string why;
      if (!replay_certificate(p.module, p.simple_top_cert, &why)) {
        ok = false;
        w = "simple-top certificate replay failed: " + why;
        break;
      }
    }
    if (ok && !table.pims.empty()) {
      // Negative control: a sum of two PIMs is projective but has a
      // non-simple top and must be refuted as indecomposable.
      const ModuleRep& first = table.pims[0].module;
      const ModuleRep& second =
          table.pims.size() > 1 ? table.pims[1].module : table.pims[0].module;
      ModuleRep sum = direct_sum(first, second);
      IdealHandle rad_handle(table.algebra, table.radical_space, Sidedness::TwoSided);
      Subspace max_sum = ideal_action(rad_handle, sum);
      QuotientModule top_sum = quotient_module(sum, max_sum);
      Certificate top_cert = is_simple(top_sum.module, derive_seed(seed, 0x9e9));
      if (top_cert.affirms_simple()) {
        ok = false;
        w = "top of a decomposable projective certified simple";
      } else {
        Certificate indec = is_indecomposable(sum, derive_seed(seed, 0x9ea));
        if (indec.affirms_indecomposable()) {
          ok = false;
          w = "P+P certified indecomposable";
        } else if (!is_projective(sum).projective()) {
          ok = false;
          w = "sum of projectives refuted as projective";
        }
      }
    }
    claim("proj_indec_iff_simple_top", ok, w);
  }

  return rep;
}

}  // namespace modrep
