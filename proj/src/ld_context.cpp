#include "ldkep/ld_context.hpp"

#include <algorithm>
#include <cassert>
#include <sstream>
#include <stdexcept>

namespace ldkep {

namespace {

std::size_t group_index_of(const PermGroup& g, const Permutation& p) {
  const auto& els = g.elements();
  auto it = std::lower_bound(els.begin(), els.end(), p);
  if (it == els.end() || !(*it == p)) throw std::invalid_argument("element not in group");
  return static_cast<std::size_t>(it - els.begin());
}

bool perm_is_even(const Permutation& p) {
  unsigned inv = 0;
  for (unsigned i = 1; i <= p.degree(); ++i)
    for (unsigned j = i + 1; j <= p.degree(); ++j)
      if (p(i) > p(j)) ++inv;
  return inv % 2 == 0;
}

void require_index_window(const BraidWord& w, unsigned lo, unsigned hi, const std::string& what) {
  for (int l : w.letters()) {
    unsigned i = static_cast<unsigned>(std::abs(l));
    if (i < lo || i > hi)
      throw std::invalid_argument(what + ": letter index " + std::to_string(i) +
                                  " outside [" + std::to_string(lo) + ", " + std::to_string(hi) + "]");
  }
}

std::string quoted(const BraidWord& w) { return "\"" + w.to_text() + "\""; }

}  // namespace

std::string element_to_text(const Element& e) {
  if (std::holds_alternative<std::uint32_t>(e)) return std::to_string(std::get<std::uint32_t>(e));
  if (std::holds_alternative<Permutation>(e)) return std::get<Permutation>(e).to_text();
  return std::get<BraidValue>(e).word().to_text();
}

std::string Endo::name() const {
  switch (kind) {
    case Kind::Identity: return "id";
    case Kind::Trivial: return "trivial";
    case Kind::Shift: return "shift" + std::to_string(amount);
    case Kind::PullOutShift:
      return "pullout" + std::to_string(amount) + "@" + std::to_string(strands);
    case Kind::Table: return "table";
    case Kind::ConjByFixed: return "conj(" + (conj ? conj->to_text() : std::string()) + ")";
  }
  return "?";
}

Endo Endo::sign_projector(const PermGroup& group) {
  if (group.degree() < 2) throw std::invalid_argument("need degree >= 2");
  Permutation swap12 = Permutation::transposition(group.degree(), 1, 2);
  std::vector<std::uint32_t> images;
  images.reserve(group.order());
  for (const Permutation& p : group.elements()) {
    const Permutation& target = perm_is_even(p) ? group.identity() : swap12;
    images.push_back(static_cast<std::uint32_t>(group_index_of(group, target)));
  }
  return table_map(group, images);
}

Endo Endo::table_map(const PermGroup& group, const std::vector<std::uint32_t>& images) {
  if (images.size() != group.order()) throw std::invalid_argument("table size mismatch");
  for (std::uint32_t v : images)
    if (v >= group.order()) throw std::invalid_argument("table image out of range");
  // must be a homomorphism; the groups are small enough to check outright
  const auto& els = group.elements();
  for (std::size_t a = 0; a < els.size(); ++a)
    for (std::size_t b = 0; b < els.size(); ++b) {
      std::size_t ab = group_index_of(group, els[a] * els[b]);
      if (!(els[images[ab]] == els[images[a]] * els[images[b]]))
        throw std::invalid_argument("table map is not an endomorphism");
    }
  Endo e;
  e.kind = Kind::Table;
  e.table = images;
  return e;
}

// --- context basics ----------------------------------------------------------

const LaverTable& LDContext::laver() const {
  if (!laver_) throw std::logic_error("not a Laver context");
  return *laver_;
}

const PermGroup& LDContext::group() const {
  if (!group_) throw std::logic_error("not a group context");
  return *group_;
}

Element LDContext::neutral() const {
  switch (carrier_) {
    case CarrierKind::Group: return group().identity();
    case CarrierKind::Braid: return BraidValue();
    case CarrierKind::Laver: break;
  }
  throw std::logic_error("carrier has no neutral element");
}

Element LDContext::group_mul(const Element& x, const Element& y) const {
  if (carrier_ == CarrierKind::Group)
    return std::get<Permutation>(x) * std::get<Permutation>(y);
  if (carrier_ == CarrierKind::Braid) return std::get<BraidValue>(x) * std::get<BraidValue>(y);
  throw std::logic_error("carrier has no group structure");
}

Element LDContext::group_inv(const Element& x) const {
  if (carrier_ == CarrierKind::Group) return std::get<Permutation>(x).inverse();
  if (carrier_ == CarrierKind::Braid) return std::get<BraidValue>(x).inverse();
  throw std::logic_error("carrier has no group structure");
}

Element LDContext::apply_endo(const Endo& f, const Element& x) const {
  switch (f.kind) {
    case Endo::Kind::Identity: return x;
    case Endo::Kind::Trivial: return neutral();
    case Endo::Kind::Shift: return std::get<BraidValue>(x).shifted(f.amount);
    case Endo::Kind::PullOutShift: {
      BraidWord w = std::get<BraidValue>(x).at_strands(f.strands).word();
      return BraidValue::from_word(erase_last_strands(w, f.strands, f.amount).shifted(f.amount));
    }
    case Endo::Kind::Table: {
      std::size_t idx = group_index_of(group(), std::get<Permutation>(x));
      return group().elements()[f.table[idx]];
    }
    case Endo::Kind::ConjByFixed: {
      const Permutation& g = *f.conj;
      return g.inverse() * std::get<Permutation>(x) * g;
    }
  }
  throw std::logic_error("unreachable");
}

Element LDContext::apply(std::size_t op_index, const Element& x, const Element& y) const {
  const LDOp& o = op(op_index);
  switch (carrier_) {
    case CarrierKind::Laver:
      return laver().apply(std::get<std::uint32_t>(x), std::get<std::uint32_t>(y));
    case CarrierKind::Group: {
      const auto& spec = std::get<GroupOpSpec>(o.spec);
      const Permutation& px = std::get<Permutation>(x);
      const Permutation& py = std::get<Permutation>(y);
      switch (spec.form) {
        case GroupOpSpec::Form::FGH: {
          Permutation fx = std::get<Permutation>(apply_endo(spec.f, Element(px.inverse())));
          Permutation gy = std::get<Permutation>(apply_endo(spec.g, Element(py)));
          Permutation hx = std::get<Permutation>(apply_endo(spec.h, Element(px)));
          return fx * gy * hx;
        }
        case GroupOpSpec::Form::CentralTwist:
          return px.inverse() * *spec.a * py * px;
        case GroupOpSpec::Form::Sym: {
          Permutation fv = std::get<Permutation>(apply_endo(spec.f, Element(px * py.inverse())));
          return fv * px;
        }
        case GroupOpSpec::Form::SymRev: {
          Permutation fv = std::get<Permutation>(apply_endo(spec.f, Element(py.inverse() * px)));
          return px * fv;
        }
        case GroupOpSpec::Form::TwistedConj: {
          Permutation fx = std::get<Permutation>(apply_endo(spec.f, Element(px.inverse())));
          return fx * py * px;
        }
      }
      throw std::logic_error("unreachable");
    }
    case CarrierKind::Braid: {
      const BraidValue& bx = std::get<BraidValue>(x);
      const BraidValue& by = std::get<BraidValue>(y);
      if (std::holds_alternative<BraidOpSpec>(o.spec)) {
        const auto& spec = std::get<BraidOpSpec>(o.spec);
        return bx.inverse().shifted(spec.shift_amount) * spec.twist *
               by.shifted(spec.shift_amount) * bx;
      }
      const auto& spec = std::get<BraidFConjSpec>(o.spec);
      BraidValue fx = std::get<BraidValue>(apply_endo(spec.f, Element(bx.inverse())));
      BraidValue fy = std::get<BraidValue>(apply_endo(spec.f, Element(by)));
      return fx * fy * bx;
    }
  }
  throw std::logic_error("unreachable");
}

bool LDContext::equal(const Element& x, const Element& y) const {
  switch (carrier_) {
    case CarrierKind::Laver: return std::get<std::uint32_t>(x) == std::get<std::uint32_t>(y);
    case CarrierKind::Group: return std::get<Permutation>(x) == std::get<Permutation>(y);
    case CarrierKind::Braid: return std::get<BraidValue>(x).equals(std::get<BraidValue>(y));
  }
  throw std::logic_error("unreachable");
}

Element LDContext::sample(Rng& rng) const {
  switch (carrier_) {
    case CarrierKind::Laver:
      return static_cast<std::uint32_t>(rng.in_range(1, laver().size()));
    case CarrierKind::Group:
      return group().elements()[rng.below(group().order())];
    case CarrierKind::Braid:
      if (sampler_.mode == BraidSampler::Mode::Pure)
        return BraidValue::from_word(random_pure_braid(rng, sampler_.length, sampler_.strands),
                                     sampler_.strands);
      return BraidValue::from_word(random_braid_word(rng, sampler_.length, sampler_.max_index));
  }
  throw std::logic_error("unreachable");
}

std::optional<std::size_t> LDContext::carrier_size() const {
  switch (carrier_) {
    case CarrierKind::Laver: return laver().size();
    case CarrierKind::Group: return group().order();
    case CarrierKind::Braid: return std::nullopt;
  }
  throw std::logic_error("unreachable");
}

Element LDContext::carrier_element(std::size_t index) const {
  switch (carrier_) {
    case CarrierKind::Laver:
      if (index >= laver().size()) throw std::out_of_range("carrier index");
      return static_cast<std::uint32_t>(index + 1);
    case CarrierKind::Group:
      return group().elements().at(index);
    case CarrierKind::Braid: break;
  }
  throw std::logic_error("braid carrier is not enumerable");
}

std::string LDContext::to_text(const Element& e) const { return element_to_text(e); }

Element LDContext::element_from_text(const std::string& text) const {
  switch (carrier_) {
    case CarrierKind::Laver: {
      unsigned long v = std::stoul(text);
      if (v < 1 || v > laver().size()) throw std::invalid_argument("Laver value out of range");
      return static_cast<std::uint32_t>(v);
    }
    case CarrierKind::Group: {
      Permutation p = Permutation::from_text(text);
      if (p.degree() != group().degree() || !group().contains(p))
        throw std::invalid_argument("permutation not in the group");
      return p;
    }
    case CarrierKind::Braid: return BraidValue::from_word(BraidWord::from_text(text, true));
  }
  throw std::logic_error("unreachable");
}

std::vector<std::size_t> LDContext::side_ops(OpSide side) const {
  std::vector<std::size_t> out;
  for (std::size_t i = 0; i < ops_.size(); ++i) {
    OpSide s = ops_[i].side;
    if (s == side || s == OpSide::Both || side == OpSide::Both) out.push_back(i);
  }
  return out;
}

std::vector<std::pair<std::size_t, std::size_t>> LDContext::declared_law_pairs() const {
  auto in_pool = [&](std::size_t i, OpSide want) {
    if (std::holds_alternative<GroupOpSpec>(ops_[i].spec) &&
        std::get<GroupOpSpec>(ops_[i].spec).form == GroupOpSpec::Form::TwistedConj)
      return false;  // near-LD only, never declared
    OpSide s = ops_[i].side;
    return s == want || s == OpSide::Both;
  };
  std::vector<std::pair<std::size_t, std::size_t>> out;
  for (std::size_t i = 0; i < ops_.size(); ++i)
    for (std::size_t j = 0; j < ops_.size(); ++j) {
      bool ab = in_pool(i, OpSide::A) && in_pool(j, OpSide::B);
      bool ba = in_pool(i, OpSide::B) && in_pool(j, OpSide::A);
      if (ab || ba) out.emplace_back(i, j);
    }
  return out;
}

// --- builders ----------------------------------------------------------------

LDContext LDContext::laver_context(unsigned level) {
  LDContext ctx;
  ctx.carrier_ = CarrierKind::Laver;
  ctx.laver_ = std::make_shared<LaverTable>(level);
  ctx.ops_.push_back(LDOp{"*", OpSide::Both, std::monostate{}});
  ctx.descriptor_ = "platform=laver n=" + std::to_string(level);
  return ctx;
}

namespace {

std::string group_descriptor_head(const PermGroup& g) {
  std::string d = "platform=group kind=" + g.kind();
  if (g.kind() == "symmetric") d += " degree=" + std::to_string(g.degree());
  else if (g.kind() == "dihedral" || g.kind() == "cyclic")
    d += " order=" + std::to_string(g.order());
  return d;
}

}  // namespace

LDContext LDContext::group_conjugacy(PermGroup group) {
  LDContext ctx;
  ctx.carrier_ = CarrierKind::Group;
  ctx.group_ = std::make_shared<PermGroup>(std::move(group));
  GroupOpSpec spec;
  spec.form = GroupOpSpec::Form::FGH;
  ctx.ops_.push_back(LDOp{"conj", OpSide::Both, spec});
  ctx.descriptor_ = group_descriptor_head(*ctx.group_);
  return ctx;
}

LDContext LDContext::central_twist(PermGroup group, std::vector<Permutation> twists,
                                   std::vector<std::string> twist_names) {
  if (twists.empty() || twists.size() != twist_names.size())
    throw std::invalid_argument("need one name per twist");
  LDContext ctx;
  ctx.carrier_ = CarrierKind::Group;
  ctx.group_ = std::make_shared<PermGroup>(std::move(group));
  for (const Permutation& a : twists)
    for (const Permutation& x : ctx.group_->elements())
      if (!(a * x == x * a)) throw std::invalid_argument("twist element is not central");
  std::string alist;
  for (std::size_t i = 0; i < twists.size(); ++i) {
    GroupOpSpec spec;
    spec.form = GroupOpSpec::Form::CentralTwist;
    spec.a = twists[i];
    ctx.ops_.push_back(LDOp{"twist[" + twist_names[i] + "]", OpSide::Both, spec});
    if (i) alist += ',';
    alist += twist_names[i];
  }
  ctx.descriptor_ = group_descriptor_head(*ctx.group_) + " a=" + alist;
  return ctx;
}

LDContext LDContext::group_fgh(PermGroup group, Endo f, Endo g, Endo h) {
  LDContext ctx;
  ctx.carrier_ = CarrierKind::Group;
  ctx.group_ = std::make_shared<PermGroup>(std::move(group));
  GroupOpSpec spec;
  spec.form = GroupOpSpec::Form::FGH;
  spec.f = std::move(f);
  spec.g = std::move(g);
  spec.h = std::move(h);
  std::string name = "fgh(" + spec.f.name() + "," + spec.g.name() + "," + spec.h.name() + ")";
  ctx.ops_.push_back(LDOp{name, OpSide::Both, spec});
  ctx.descriptor_ = group_descriptor_head(*ctx.group_) + " op=" + name;
  return ctx;
}

LDContext LDContext::group_symmetric(PermGroup group, Endo f, bool reversed,
                                     unsigned check_trials, std::uint64_t check_seed) {
  LDContext ctx;
  ctx.carrier_ = CarrierKind::Group;
  ctx.group_ = std::make_shared<PermGroup>(std::move(group));
  Element witness;
  if (!endo_is_projector(ctx, f, check_trials, check_seed, &witness))
    throw std::invalid_argument("symmetric twist requires a projector, witness x = " +
                                element_to_text(witness));
  GroupOpSpec spec;
  spec.form = reversed ? GroupOpSpec::Form::SymRev : GroupOpSpec::Form::Sym;
  spec.f = std::move(f);
  ctx.ops_.push_back(LDOp{reversed ? "symrev" : "sym", OpSide::Both, spec});
  ctx.descriptor_ =
      group_descriptor_head(*ctx.group_) + " op=" + ctx.ops_.back().name + "[" + spec.f.name() + "]";
  return ctx;
}

LDContext LDContext::group_twisted(PermGroup group, Endo f) {
  LDContext ctx;
  ctx.carrier_ = CarrierKind::Group;
  ctx.group_ = std::make_shared<PermGroup>(std::move(group));
  GroupOpSpec spec;
  spec.form = GroupOpSpec::Form::TwistedConj;
  spec.f = std::move(f);
  ctx.ops_.push_back(LDOp{"twisted[" + spec.f.name() + "]", OpSide::Both, spec});
  ctx.descriptor_ = group_descriptor_head(*ctx.group_) + " op=" + ctx.ops_.back().name;
  return ctx;
}

LDContext LDContext::shifted_conjugacy() {
  LDContext ctx;
  ctx.carrier_ = CarrierKind::Braid;
  ctx.sampler_ = BraidSampler{BraidSampler::Mode::Free, 4, 0, 8};
  ctx.braid_params_ = BraidParams{1, 0, 0};
  ctx.ops_.push_back(LDOp{"*", OpSide::Both, BraidOpSpec{1, BraidWord::generator(1)}});
  ctx.ops_.push_back(LDOp{"*bar", OpSide::Both, BraidOpSpec{1, BraidWord::generator(-1)}});
  ctx.descriptor_ = "platform=braid mode=shifted p=1";
  return ctx;
}

LDContext LDContext::generalized_shifted_conjugacy(unsigned p, const BraidWord& a_left,
                                                   const BraidWord& a_right, int sign,
                                                   bool enforce) {
  if (p < 1) throw std::invalid_argument("p must be >= 1");
  if (sign != 1 && sign != -1) throw std::invalid_argument("sign must be +-1");
  if (a_left.max_index() + 1 > p) throw std::invalid_argument("left component must lie in B_p");
  if (a_right.max_index() + 1 > p) throw std::invalid_argument("right component must lie in B_p");
  if (enforce) {
    if (!braid_equal(a_left * a_right, a_right * a_left))
      throw std::invalid_argument("twist components must commute");
  }
  BraidWord tau = tau_word(p, p);
  if (sign < 0) tau = tau.inverse();
  LDContext ctx;
  ctx.carrier_ = CarrierKind::Braid;
  ctx.sampler_ = BraidSampler{BraidSampler::Mode::Free, std::max(2u, p), 0, 8};
  ctx.braid_params_ = BraidParams{p, 0, 0};
  ctx.ops_.push_back(LDOp{"*gen", OpSide::Both, BraidOpSpec{p, a_left * tau * a_right}});
  ctx.descriptor_ = "platform=braid mode=gen p=" + std::to_string(p) +
                    " sign=" + (sign > 0 ? std::string("+") : std::string("-")) +
                    " aprime=" + quoted(a_left) + " adprime=" + quoted(a_right) +
                    (enforce ? "" : " check=off");
  return ctx;
}

LDContext LDContext::split_shifted_conjugacy(unsigned p1, unsigned p2, const BraidWord& a1p,
                                             const BraidWord& a1pp, const BraidWord& a2p,
                                             const BraidWord& a2pp, bool enforce) {
  if (p1 < 1 || p2 < 1) throw std::invalid_argument("p1, p2 must be >= 1");
  unsigned p = p1 + p2;
  if (a1p.max_index() + 1 > p1 || a1pp.max_index() + 1 > p1)
    throw std::invalid_argument("first components must lie in B_p1");
  if (a2p.max_index() + 1 > p2 || a2pp.max_index() + 1 > p2)
    throw std::invalid_argument("second components must lie in B_p2");
  if (enforce) {
    if (!braid_equal(a1p * a1pp, a1pp * a1p) || !braid_equal(a2p * a2pp, a2pp * a2p))
      throw std::invalid_argument("split components must commute pairwise");
  }
  BraidWord twist = a1p * a2p.shifted(p1) * tau_word(p2, p).shifted(p1) *
                    tau_word(p, p1).inverse() * a1pp * a2pp.shifted(p1);
  LDContext ctx;
  ctx.carrier_ = CarrierKind::Braid;
  ctx.sampler_ = BraidSampler{BraidSampler::Mode::Free, std::max(2u, p), 0, 8};
  ctx.braid_params_ = BraidParams{p, 0, 0};
  ctx.ops_.push_back(LDOp{"*split", OpSide::Both, BraidOpSpec{p, twist}});
  ctx.descriptor_ = "platform=braid mode=split p1=" + std::to_string(p1) +
                    " p2=" + std::to_string(p2) + " a1prime=" + quoted(a1p) +
                    " a1dprime=" + quoted(a1pp) + " a2prime=" + quoted(a2p) +
                    " a2dprime=" + quoted(a2pp);
  return ctx;
}

LDContext LDContext::braid_f_conjugacy(Endo f, BraidSampler sampler) {
  LDContext ctx;
  ctx.carrier_ = CarrierKind::Braid;
  ctx.sampler_ = sampler;
  ctx.ops_.push_back(LDOp{"fconj[" + f.name() + "]", OpSide::Both, BraidFConjSpec{std::move(f)}});
  ctx.descriptor_ = "platform=braid mode=fconj op=" + ctx.ops_.back().name;
  return ctx;
}

void ParabolicParams::validate_relaxed() const {
  if (!(1 < q1 && q1 < q2 && q2 < p)) throw std::invalid_argument("need 1 < q1 < q2 < p");
}

void ParabolicParams::validate_strict() const {
  validate_relaxed();
  if (q1 < 3 || p - q2 < 3) throw std::invalid_argument("need q1 >= 3 and p - q2 >= 3");
  if (strands && strands < 2 * p) throw std::invalid_argument("need N >= 2p");
}

LDContext LDContext::parabolic_partial_multi_ld(
    unsigned p, unsigned q1, unsigned q2,
    const std::vector<std::pair<BraidWord, BraidWord>>& alphas,
    const std::vector<std::pair<BraidWord, BraidWord>>& betas) {
  ParabolicParams params{p, q1, q2, 0};
  params.validate_strict();
  if (alphas.empty() || betas.empty()) throw std::invalid_argument("need at least one op per pool");

  LDContext ctx;
  ctx.carrier_ = CarrierKind::Braid;
  ctx.sampler_ = BraidSampler{BraidSampler::Mode::Free, p, 0, 8};
  ctx.braid_params_ = BraidParams{p, q1, q2};
  BraidWord tau = tau_word(p, p);
  std::string desc = "platform=braid mode=gsc p=" + std::to_string(p) +
                     " q1=" + std::to_string(q1) + " q2=" + std::to_string(q2);
  for (std::size_t i = 0; i < alphas.size(); ++i) {
    const auto& [a1, a2] = alphas[i];
    if (a1.max_index() + 1 > q1) throw std::invalid_argument("alpha1 must lie in B_q1");
    if (a2.max_index() + 1 > q2) throw std::invalid_argument("alpha2 must lie in B_q2");
    ctx.ops_.push_back(LDOp{"alpha" + std::to_string(i + 1), OpSide::A,
                            BraidOpSpec{p, a1 * tau * a2}});
    desc += " alpha1=" + quoted(a1) + " alpha2=" + quoted(a2);
  }
  for (std::size_t i = 0; i < betas.size(); ++i) {
    const auto& [b1, b2] = betas[i];
    if (!b1.empty()) require_index_window(b1, q2 + 1, p - 1, "beta1");
    if (!b2.empty()) require_index_window(b2, q1 + 1, p - 1, "beta2");
    ctx.ops_.push_back(LDOp{"beta" + std::to_string(i + 1), OpSide::B,
                            BraidOpSpec{p, b1 * tau * b2}});
    desc += " beta1=" + quoted(b1) + " beta2=" + quoted(b2);
  }
  ctx.descriptor_ = desc;
  return ctx;
}

// --- descriptor parsing --------------------------------------------------------

namespace {

std::vector<std::pair<std::string, std::string>> tokenize_descriptor(const std::string& text) {
  std::vector<std::pair<std::string, std::string>> out;
  std::size_t i = 0;
  while (i < text.size()) {
    while (i < text.size() && text[i] == ' ') ++i;
    if (i >= text.size()) break;
    std::size_t eq = text.find('=', i);
    if (eq == std::string::npos) throw std::invalid_argument("descriptor token without '='");
    std::string key = text.substr(i, eq - i);
    std::string value;
    i = eq + 1;
    if (i < text.size() && text[i] == '"') {
      std::size_t close = text.find('"', i + 1);
      if (close == std::string::npos) throw std::invalid_argument("unterminated quote");
      value = text.substr(i + 1, close - i - 1);
      i = close + 1;
    } else {
      std::size_t end = text.find(' ', i);
      if (end == std::string::npos) end = text.size();
      value = text.substr(i, end - i);
      i = end;
    }
    out.emplace_back(std::move(key), std::move(value));
  }
  return out;
}

std::string find_one(const std::vector<std::pair<std::string, std::string>>& kv,
                     const std::string& key, const std::string& fallback = "",
                     bool required = false) {
  for (const auto& [k, v] : kv)
    if (k == key) return v;
  if (required) throw std::invalid_argument("descriptor missing key '" + key + "'");
  return fallback;
}

std::vector<std::string> split_commas(const std::string& s) {
  std::vector<std::string> out;
  std::size_t start = 0;
  while (start <= s.size()) {
    std::size_t end = s.find(',', start);
    if (end == std::string::npos) { out.push_back(s.substr(start)); break; }
    out.push_back(s.substr(start, end - start));
    start = end + 1;
  }
  return out;
}

}  // namespace

LDContext LDContext::from_descriptor(const std::string& descriptor) {
  auto kv = tokenize_descriptor(descriptor);
  std::string platform = find_one(kv, "platform", "", true);
  if (platform == "laver") {
    return laver_context(static_cast<unsigned>(std::stoul(find_one(kv, "n", "", true))));
  }
  if (platform == "group") {
    std::string kind = find_one(kv, "kind", "", true);
    PermGroup g = [&] {
      if (kind == "symmetric")
        return PermGroup::symmetric(static_cast<unsigned>(std::stoul(find_one(kv, "degree", "", true))));
      if (kind == "dihedral")
        return PermGroup::dihedral(static_cast<unsigned>(std::stoul(find_one(kv, "order", "", true))));
      if (kind == "cyclic")
        return PermGroup::cyclic(static_cast<unsigned>(std::stoul(find_one(kv, "order", "", true))));
      if (kind == "quaternion") return PermGroup::quaternion();
      throw std::invalid_argument("unknown group kind '" + kind + "'");
    }();
    std::string alist = find_one(kv, "a");
    if (alist.empty()) return group_conjugacy(std::move(g));
    std::vector<Permutation> twists;
    std::vector<std::string> names;
    for (const std::string& name : split_commas(alist)) {
      auto el = g.element_by_name(name);
      if (!el) throw std::invalid_argument("unknown element name '" + name + "'");
      twists.push_back(*el);
      names.push_back(name);
    }
    return central_twist(std::move(g), std::move(twists), std::move(names));
  }
  if (platform == "braid") {
    std::string mode = find_one(kv, "mode", "", true);
    if (mode == "shifted") {
      if (std::stoul(find_one(kv, "p", "1")) != 1)
        throw std::invalid_argument("mode=shifted is the p=1 operation");
      return shifted_conjugacy();
    }
    if (mode == "gen") {
      unsigned p = static_cast<unsigned>(std::stoul(find_one(kv, "p", "", true)));
      int sign = find_one(kv, "sign", "+") == "-" ? -1 : 1;
      bool enforce = find_one(kv, "check", "strict") != "off";
      return generalized_shifted_conjugacy(p, BraidWord::from_text(find_one(kv, "aprime")),
                                           BraidWord::from_text(find_one(kv, "adprime")), sign,
                                           enforce);
    }
    if (mode == "split") {
      unsigned p1 = static_cast<unsigned>(std::stoul(find_one(kv, "p1", "", true)));
      unsigned p2 = static_cast<unsigned>(std::stoul(find_one(kv, "p2", "", true)));
      return split_shifted_conjugacy(p1, p2, BraidWord::from_text(find_one(kv, "a1prime")),
                                     BraidWord::from_text(find_one(kv, "a1dprime")),
                                     BraidWord::from_text(find_one(kv, "a2prime")),
                                     BraidWord::from_text(find_one(kv, "a2dprime")));
    }
    if (mode == "gsc") {
      unsigned p = static_cast<unsigned>(std::stoul(find_one(kv, "p", "", true)));
      unsigned q1 = static_cast<unsigned>(std::stoul(find_one(kv, "q1", "", true)));
      unsigned q2 = static_cast<unsigned>(std::stoul(find_one(kv, "q2", "", true)));
      std::vector<std::pair<BraidWord, BraidWord>> alphas, betas;
      std::optional<BraidWord> pending_a1, pending_b1;
      for (const auto& [k, v] : kv) {
        if (k == "alpha1") pending_a1 = BraidWord::from_text(v);
        else if (k == "alpha2") {
          alphas.emplace_back(pending_a1.value_or(BraidWord()), BraidWord::from_text(v));
          pending_a1.reset();
        } else if (k == "beta1") pending_b1 = BraidWord::from_text(v);
        else if (k == "beta2") {
          betas.emplace_back(pending_b1.value_or(BraidWord()), BraidWord::from_text(v));
          pending_b1.reset();
        }
      }
      if (pending_a1) alphas.emplace_back(*pending_a1, BraidWord());
      if (pending_b1) betas.emplace_back(*pending_b1, BraidWord());
      if (alphas.empty()) alphas.emplace_back(BraidWord(), BraidWord());
      if (betas.empty()) betas.emplace_back(BraidWord(), BraidWord());
      return parabolic_partial_multi_ld(p, q1, q2, alphas, betas);
    }
    throw std::invalid_argument("unknown braid mode '" + mode + "'");
  }
  throw std::invalid_argument("unknown platform '" + platform + "'");
}

// --- law checking --------------------------------------------------------------

namespace {

bool law_holds(const LDContext& ctx, std::size_t i, std::size_t j, const Element& x,
               const Element& y, const Element& z) {
  Element lhs = ctx.apply(i, x, ctx.apply(j, y, z));
  Element rhs = ctx.apply(j, ctx.apply(i, x, y), ctx.apply(i, x, z));
  return ctx.equal(lhs, rhs);
}

}  // namespace

LawReport check_left_distributive(const LDContext& ctx, std::size_t op_i, std::size_t op_j,
                                  unsigned trials, std::uint64_t seed,
                                  std::size_t exhaustive_limit) {
  LawReport report;
  report.op_i = op_i;
  report.op_j = op_j;
  report.law = "x " + ctx.op(op_i).name + " (y " + ctx.op(op_j).name + " z) == (x " +
               ctx.op(op_i).name + " y) " + ctx.op(op_j).name + " (x " + ctx.op(op_i).name + " z)";
  auto size = ctx.carrier_size();
  if (size && *size <= exhaustive_limit) {
    report.exhaustive = true;
    for (std::size_t a = 0; a < *size; ++a)
      for (std::size_t b = 0; b < *size; ++b)
        for (std::size_t c = 0; c < *size; ++c) {
          Element x = ctx.carrier_element(a), y = ctx.carrier_element(b), z = ctx.carrier_element(c);
          ++report.checked;
          if (!law_holds(ctx, op_i, op_j, x, y, z)) {
            report.pass = false;
            report.counterexample = {x, y, z};
            return report;
          }
        }
    return report;
  }
  Rng rng(seed);
  for (unsigned t = 0; t < trials; ++t) {
    Element x = ctx.sample(rng), y = ctx.sample(rng), z = ctx.sample(rng);
    ++report.checked;
    if (!law_holds(ctx, op_i, op_j, x, y, z)) {
      report.pass = false;
      report.counterexample = {x, y, z};
      return report;
    }
  }
  return report;
}

LawReport check_declared_laws(const LDContext& ctx, unsigned trials, std::uint64_t seed,
                              std::size_t exhaustive_limit) {
  LawReport last;
  for (auto [i, j] : ctx.declared_law_pairs()) {
    last = check_left_distributive(ctx, i, j, trials, seed, exhaustive_limit);
    if (!last.pass) return last;
  }
  return last;
}

ConditionReport check_fgh_conditions(const LDContext& ctx, const Endo& f, const Endo& g,
                                     const Endo& h, unsigned trials, std::uint64_t seed) {
  ConditionReport report;
  Rng rng(seed);
  auto ap = [&](const Endo& e, const Element& x) { return ctx.apply_endo(e, x); };
  auto fail = [&](const std::string& name) {
    report.conditions_pass = false;
    if (std::find(report.failed_conditions.begin(), report.failed_conditions.end(), name) ==
        report.failed_conditions.end())
      report.failed_conditions.push_back(name);
  };
  for (unsigned t = 0; t < trials; ++t) {
    Element x = ctx.sample(rng);
    ++report.checked;
    if (!ctx.equal(ap(f, ap(h, x)), ap(f, x))) fail("fh=f");
    Element gh = ap(g, ap(h, x)), hg = ap(h, ap(g, x)), hf = ap(h, ap(f, x));
    if (!ctx.equal(gh, hg)) fail("gh=hg");
    if (!ctx.equal(hg, hf)) fail("hg=hf");
    Element fg = ap(f, ap(g, x)), gf = ap(g, ap(f, x)), ff = ap(f, ap(f, x));
    if (!ctx.equal(fg, gf)) fail("fg=gf");
    if (!ctx.equal(gf, ff)) fail("gf=f^2");
    if (!ctx.equal(ap(h, ap(h, x)), ap(h, x))) fail("h^2=h");
  }
  // the operation the conditions are about
  auto star = [&](const Element& x, const Element& y) {
    return ctx.group_mul(ctx.group_mul(ap(f, ctx.group_inv(x)), ap(g, y)), ap(h, x));
  };
  Rng rng2(seed ^ 0x5bd1e995);
  for (unsigned t = 0; t < trials; ++t) {
    Element x = ctx.sample(rng2), y = ctx.sample(rng2), z = ctx.sample(rng2);
    Element lhs = star(x, star(y, z));
    Element rhs = star(star(x, y), star(x, z));
    if (!ctx.equal(lhs, rhs)) { report.law_pass = false; break; }
  }
  return report;
}

ConditionReport check_endo_twist_conditions(const LDContext& ctx, const Endo& f,
                                            const std::vector<Element>& twists,
                                            unsigned trials, std::uint64_t seed) {
  ConditionReport report;
  auto ap = [&](const Element& x) { return ctx.apply_endo(f, x); };
  auto mul = [&](const Element& x, const Element& y) { return ctx.group_mul(x, y); };
  // a_i f(a_i) a_j == f(a_j) a_i f(a_i), exact
  for (std::size_t i = 0; i < twists.size(); ++i)
    for (std::size_t j = 0; j < twists.size(); ++j) {
      Element lhs = mul(mul(twists[i], ap(twists[i])), twists[j]);
      Element rhs = mul(mul(ap(twists[j]), twists[i]), ap(twists[i]));
      ++report.checked;
      if (!ctx.equal(lhs, rhs)) {
        report.conditions_pass = false;
        report.failed_conditions.push_back("a_i f(a_i) a_j = f(a_j) a_i f(a_i) at i=" +
                                           std::to_string(i) + " j=" + std::to_string(j));
      }
    }
  // [a_i, f^2(x)] == 1, sampled
  Rng rng(seed);
  for (unsigned t = 0; t < trials; ++t) {
    Element x = ctx.sample(rng);
    Element ffx = ap(ap(x));
    ++report.checked;
    for (std::size_t i = 0; i < twists.size(); ++i)
      if (!ctx.equal(mul(twists[i], ffx), mul(ffx, twists[i]))) {
        report.conditions_pass = false;
        report.failed_conditions.push_back("[a_i, f^2(x)] = 1 at i=" + std::to_string(i));
        break;
      }
  }
  // the family law itself, sampled over all op pairs
  auto star = [&](std::size_t i, const Element& x, const Element& y) {
    return mul(mul(mul(ap(ctx.group_inv(x)), twists[i]), ap(y)), x);
  };
  Rng rng2(seed ^ 0xc2b2ae35);
  for (unsigned t = 0; t < trials && report.law_pass; ++t) {
    Element x = ctx.sample(rng2), y = ctx.sample(rng2), z = ctx.sample(rng2);
    for (std::size_t i = 0; i < twists.size() && report.law_pass; ++i)
      for (std::size_t j = 0; j < twists.size(); ++j) {
        Element lhs = star(i, x, star(j, y, z));
        Element rhs = star(j, star(i, x, y), star(i, x, z));
        if (!ctx.equal(lhs, rhs)) { report.law_pass = false; break; }
      }
  }
  return report;
}

LawReport check_twisted_near_ld(const LDContext& ctx, std::size_t op_index, const Endo& f,
                                unsigned trials, std::uint64_t seed) {
  LawReport report;
  report.op_i = report.op_j = op_index;
  report.law = "a*(b*c) == (a*b)*(f(a)*c)";
  Rng rng(seed);
  for (unsigned t = 0; t < trials; ++t) {
    Element a = ctx.sample(rng), b = ctx.sample(rng), c = ctx.sample(rng);
    ++report.checked;
    Element lhs = ctx.apply(op_index, a, ctx.apply(op_index, b, c));
    Element rhs = ctx.apply(op_index, ctx.apply(op_index, a, b),
                            ctx.apply(op_index, ctx.apply_endo(f, a), c));
    if (!ctx.equal(lhs, rhs)) {
      report.pass = false;
      report.counterexample = {a, b, c};
      return report;
    }
  }
  return report;
}

LawReport check_conjugacy_over_symmetric(const PermGroup& group, unsigned trials,
                                         std::uint64_t seed) {
  LawReport report;
  report.law = "x*(y o z) == (x*y) o (x*z) for x*y = x^-1 y x, y o z = y z^-1 y";
  Rng rng(seed);
  const auto& els = group.elements();
  for (unsigned t = 0; t < trials; ++t) {
    const Permutation& x = els[rng.below(els.size())];
    const Permutation& y = els[rng.below(els.size())];
    const Permutation& z = els[rng.below(els.size())];
    ++report.checked;
    Permutation lhs = x.inverse() * (y * z.inverse() * y) * x;
    Permutation cy = x.inverse() * y * x, cz = x.inverse() * z * x;
    Permutation rhs = cy * cz.inverse() * cy;
    if (!(lhs == rhs)) {
      report.pass = false;
      report.counterexample = {Element(x), Element(y), Element(z)};
      return report;
    }
  }
  return report;
}

bool endo_is_projector(const LDContext& ctx, const Endo& f, unsigned trials, std::uint64_t seed,
                       Element* witness) {
  Rng rng(seed);
  for (unsigned t = 0; t < trials; ++t) {
    Element x = ctx.sample(rng);
    Element fx = ctx.apply_endo(f, x);
    if (!ctx.equal(ctx.apply_endo(f, fx), fx)) {
      if (witness) *witness = x;
      return false;
    }
  }
  return true;
}

}  // namespace ldkep
