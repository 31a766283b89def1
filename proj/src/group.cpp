#include "hol/group.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <deque>
#include <numeric>
#include <set>
#include <sstream>

#include "hol/rng.hpp"

namespace hol {

namespace {

constexpr double kTwoPi = 6.283185307179586476925286766559;

double wrap_angle(double a) {
  a = std::fmod(a, kTwoPi);
  if (a < 0) a += kTwoPi;
  if (a >= kTwoPi) a = 0;  // fmod can land exactly on 2pi
  return a;
}

double circle_dist(double a, double b) {
  double d = std::fabs(wrap_angle(a) - wrap_angle(b));
  return std::min(d, kTwoPi - d);
}

std::uint64_t factorial(int n) {
  std::uint64_t f = 1;
  for (int i = 2; i <= n; ++i) f *= static_cast<std::uint64_t>(i);
  return f;
}

// quaternion8 axis products: table[a][b] = (axis, sign flip) for a*b with
// axes 0..3 = 1,i,j,k.
struct Q8Prod {
  int axis;
  bool neg;
};
constexpr Q8Prod kQ8[4][4] = {
    {{0, false}, {1, false}, {2, false}, {3, false}},
    {{1, false}, {0, true}, {3, false}, {2, true}},
    {{2, false}, {3, true}, {0, true}, {1, false}},
    {{3, false}, {2, false}, {1, true}, {0, true}},
};

const char* kQ8Names[8] = {"1", "i", "j", "k", "-1", "-i", "-j", "-k"};

int mod(int a, int n) {
  int r = a % n;
  return r < 0 ? r + n : r;
}

void require_same_desc(const GroupElement& a, const GroupElement& b, const char* op) {
  if (a.desc != b.desc)
    throw PreconditionError(std::string(op) + ": descriptor mismatch (" + a.desc.str() + " vs " +
                            b.desc.str() + ")");
}

}  // namespace

std::string kind_name(GroupKind k) {
  switch (k) {
    case GroupKind::Cyclic: return "cyclic";
    case GroupKind::Symmetric: return "symmetric";
    case GroupKind::Dihedral: return "dihedral";
    case GroupKind::Quaternion8: return "quaternion8";
    case GroupKind::U1: return "U1";
    case GroupKind::SU2: return "SU2";
  }
  return "?";
}

GroupDescriptor GroupDescriptor::cyclic(int n) {
  if (n < 1) throw ValidationError("cyclic(n) needs n >= 1");
  return {GroupKind::Cyclic, n, 0.0};
}
GroupDescriptor GroupDescriptor::symmetric(int n) {
  if (n < 1) throw ValidationError("symmetric(n) needs n >= 1");
  return {GroupKind::Symmetric, n, 0.0};
}
GroupDescriptor GroupDescriptor::dihedral(int n) {
  if (n < 1) throw ValidationError("dihedral(n) needs n >= 1");
  return {GroupKind::Dihedral, n, 0.0};
}
GroupDescriptor GroupDescriptor::quaternion8() { return {GroupKind::Quaternion8, 8, 0.0}; }
GroupDescriptor GroupDescriptor::u1(double tol) {
  if (!(tol > 0)) throw ValidationError("U1 needs tolerance > 0");
  return {GroupKind::U1, 0, tol};
}
GroupDescriptor GroupDescriptor::su2(double tol) {
  if (!(tol > 0)) throw ValidationError("SU2 needs tolerance > 0");
  return {GroupKind::SU2, 0, tol};
}

std::uint64_t GroupDescriptor::order() const {
  switch (kind) {
    case GroupKind::Cyclic: return static_cast<std::uint64_t>(n);
    case GroupKind::Symmetric: return factorial(n);
    case GroupKind::Dihedral: return 2ull * static_cast<std::uint64_t>(n);
    case GroupKind::Quaternion8: return 8;
    default: throw PreconditionError("order(): " + str() + " is not finite");
  }
}

bool GroupDescriptor::operator==(const GroupDescriptor& o) const {
  if (kind != o.kind) return false;
  if (finite()) return n == o.n;
  return tolerance == o.tolerance;
}

std::string GroupDescriptor::str() const {
  std::ostringstream os;
  os << kind_name(kind);
  if (kind == GroupKind::Cyclic || kind == GroupKind::Symmetric || kind == GroupKind::Dihedral)
    os << "(" << n << ")";
  return os.str();
}

double Quat::norm() const { return std::sqrt(w * w + x * x + y * y + z * z); }

Quat Quat::normalized() const {
  double n = norm();
  if (n <= 0) throw ValidationError("zero quaternion cannot be normalized");
  return {w / n, x / n, y / n, z / n};
}

double Quat::dist(const Quat& o) const {
  double dw = w - o.w, dx = x - o.x, dy = y - o.y, dz = z - o.z;
  return std::sqrt(dw * dw + dx * dx + dy * dy + dz * dz);
}

std::string GroupElement::str() const {
  std::ostringstream os;
  switch (desc.kind) {
    case GroupKind::Cyclic: os << std::get<int>(payload); break;
    case GroupKind::Symmetric: {
      const auto& p = std::get<std::vector<int>>(payload);
      os << "[";
      for (std::size_t i = 0; i < p.size(); ++i) os << (i ? " " : "") << p[i];
      os << "]";
      break;
    }
    case GroupKind::Dihedral: {
      const auto& d = std::get<DihedralPayload>(payload);
      os << (d.reflection ? "ref" : "rot") << d.k;
      break;
    }
    case GroupKind::Quaternion8: os << kQ8Names[std::get<std::uint8_t>(payload)]; break;
    case GroupKind::U1: {
      char buf[32];
      std::snprintf(buf, sizeof buf, "%.12g", std::get<double>(payload));
      os << "angle " << buf;
      break;
    }
    case GroupKind::SU2: {
      const Quat& q = std::get<Quat>(payload);
      char buf[96];
      std::snprintf(buf, sizeof buf, "(%.9g, %.9g, %.9g, %.9g)", q.w, q.x, q.y, q.z);
      os << buf;
      break;
    }
  }
  return os.str();
}

GroupElement identity(const GroupDescriptor& d) {
  switch (d.kind) {
    case GroupKind::Cyclic: return {d, 0};
    case GroupKind::Symmetric: {
      std::vector<int> p(d.n);
      std::iota(p.begin(), p.end(), 0);
      return {d, std::move(p)};
    }
    case GroupKind::Dihedral: return {d, DihedralPayload{false, 0}};
    case GroupKind::Quaternion8: return {d, std::uint8_t{0}};
    case GroupKind::U1: return {d, 0.0};
    case GroupKind::SU2: return {d, Quat{1, 0, 0, 0}};
  }
  throw Error("unreachable");
}

GroupElement multiply(const GroupElement& a, const GroupElement& b) {
  require_same_desc(a, b, "multiply");
  const GroupDescriptor& d = a.desc;
  switch (d.kind) {
    case GroupKind::Cyclic:
      return {d, mod(std::get<int>(a.payload) + std::get<int>(b.payload), d.n)};
    case GroupKind::Symmetric: {
      // (a*b)(i) = a(b(i)): b acts first.
      const auto& pa = std::get<std::vector<int>>(a.payload);
      const auto& pb = std::get<std::vector<int>>(b.payload);
      std::vector<int> r(pa.size());
      for (std::size_t i = 0; i < r.size(); ++i) r[i] = pa[static_cast<std::size_t>(pb[i])];
      return {d, std::move(r)};
    }
    case GroupKind::Dihedral: {
      // ref(k) = r^k s with relations r^n = s^2 = (rs)^2 = e.
      const auto& x = std::get<DihedralPayload>(a.payload);
      const auto& y = std::get<DihedralPayload>(b.payload);
      int n = d.n;
      if (!x.reflection && !y.reflection) return {d, DihedralPayload{false, mod(x.k + y.k, n)}};
      if (!x.reflection && y.reflection) return {d, DihedralPayload{true, mod(x.k + y.k, n)}};
      if (x.reflection && !y.reflection) return {d, DihedralPayload{true, mod(x.k - y.k, n)}};
      return {d, DihedralPayload{false, mod(x.k - y.k, n)}};
    }
    case GroupKind::Quaternion8: {
      int ia = std::get<std::uint8_t>(a.payload), ib = std::get<std::uint8_t>(b.payload);
      int sa = ia / 4, sb = ib / 4;
      Q8Prod p = kQ8[ia % 4][ib % 4];
      int sign = (sa ^ sb ^ (p.neg ? 1 : 0));
      return {d, static_cast<std::uint8_t>(p.axis + 4 * sign)};
    }
    case GroupKind::U1:
      return {d, wrap_angle(std::get<double>(a.payload) + std::get<double>(b.payload))};
    case GroupKind::SU2:
      return {d, (std::get<Quat>(a.payload) * std::get<Quat>(b.payload)).normalized()};
  }
  throw Error("unreachable");
}

GroupElement inverse(const GroupElement& a) {
  const GroupDescriptor& d = a.desc;
  switch (d.kind) {
    case GroupKind::Cyclic: return {d, mod(-std::get<int>(a.payload), d.n)};
    case GroupKind::Symmetric: {
      const auto& p = std::get<std::vector<int>>(a.payload);
      std::vector<int> r(p.size());
      for (std::size_t i = 0; i < p.size(); ++i) r[static_cast<std::size_t>(p[i])] = static_cast<int>(i);
      return {d, std::move(r)};
    }
    case GroupKind::Dihedral: {
      const auto& x = std::get<DihedralPayload>(a.payload);
      if (x.reflection) return a;  // reflections are involutions
      return {d, DihedralPayload{false, mod(-x.k, d.n)}};
    }
    case GroupKind::Quaternion8: {
      int i = std::get<std::uint8_t>(a.payload);
      if (i % 4 == 0) return a;  // +-1 are self-inverse
      return {d, static_cast<std::uint8_t>((i + 4) % 8)};
    }
    case GroupKind::U1: return {d, wrap_angle(-std::get<double>(a.payload))};
    case GroupKind::SU2: return {d, std::get<Quat>(a.payload).conjugate()};
  }
  throw Error("unreachable");
}

bool equal(const GroupElement& a, const GroupElement& b) {
  if (a.desc != b.desc) return false;
  switch (a.desc.kind) {
    case GroupKind::U1:
      return circle_dist(std::get<double>(a.payload), std::get<double>(b.payload)) <=
             a.desc.tolerance;
    case GroupKind::SU2:
      return std::get<Quat>(a.payload).dist(std::get<Quat>(b.payload)) <= a.desc.tolerance;
    default: return a.payload == b.payload;
  }
}

double distance(const GroupElement& a, const GroupElement& b) {
  require_same_desc(a, b, "distance");
  switch (a.desc.kind) {
    case GroupKind::U1: return circle_dist(std::get<double>(a.payload), std::get<double>(b.payload));
    case GroupKind::SU2: return std::get<Quat>(a.payload).dist(std::get<Quat>(b.payload));
    default: return a.payload == b.payload ? 0.0 : 1.0;
  }
}

GroupElement power(const GroupElement& a, long long k) {
  GroupElement base = k < 0 ? inverse(a) : a;
  unsigned long long e = static_cast<unsigned long long>(k < 0 ? -k : k);
  GroupElement acc = identity(a.desc);
  while (e) {
    if (e & 1) acc = multiply(base, acc);
    base = multiply(base, base);
    e >>= 1;
  }
  return acc;
}

std::uint64_t element_key(const GroupElement& a) {
  const GroupDescriptor& d = a.desc;
  switch (d.kind) {
    case GroupKind::Cyclic: return static_cast<std::uint64_t>(std::get<int>(a.payload));
    case GroupKind::Symmetric: {
      // Lehmer rank in lexicographic order.
      const auto& p = std::get<std::vector<int>>(a.payload);
      std::uint64_t rank = 0;
      for (std::size_t i = 0; i < p.size(); ++i) {
        int smaller = 0;
        for (std::size_t j = i + 1; j < p.size(); ++j)
          if (p[j] < p[i]) ++smaller;
        rank += static_cast<std::uint64_t>(smaller) * factorial(static_cast<int>(p.size() - i - 1));
      }
      return rank;
    }
    case GroupKind::Dihedral: {
      const auto& x = std::get<DihedralPayload>(a.payload);
      return static_cast<std::uint64_t>(x.k) + (x.reflection ? static_cast<std::uint64_t>(d.n) : 0);
    }
    case GroupKind::Quaternion8: return std::get<std::uint8_t>(a.payload);
    default: throw PreconditionError("element_key: matrix kinds have no exact key");
  }
}

std::vector<GroupElement> enumerate_group(const GroupDescriptor& d) {
  if (!d.finite()) throw PreconditionError("enumerate_group: " + d.str() + " is not finite");
  if (d.order() > 1000000) throw BoundsError("enumerate_group: order cap 10^6 exceeded");
  std::vector<GroupElement> out;
  out.reserve(d.order());
  switch (d.kind) {
    case GroupKind::Cyclic:
      for (int i = 0; i < d.n; ++i) out.push_back({d, i});
      break;
    case GroupKind::Symmetric: {
      std::vector<int> p(d.n);
      std::iota(p.begin(), p.end(), 0);
      do {
        out.push_back({d, p});
      } while (std::next_permutation(p.begin(), p.end()));
      break;
    }
    case GroupKind::Dihedral:
      for (int i = 0; i < d.n; ++i) out.push_back({d, DihedralPayload{false, i}});
      for (int i = 0; i < d.n; ++i) out.push_back({d, DihedralPayload{true, i}});
      break;
    case GroupKind::Quaternion8:
      for (int i = 0; i < 8; ++i) out.push_back({d, static_cast<std::uint8_t>(i)});
      break;
    default: break;
  }
  return out;
}

int element_order(const GroupElement& a) {
  if (!a.desc.finite()) throw PreconditionError("element_order: finite kinds only");
  GroupElement e = identity(a.desc);
  GroupElement acc = a;
  int k = 1;
  while (!equal(acc, e)) {
    acc = multiply(a, acc);
    ++k;
    if (k > static_cast<int>(a.desc.order()))
      throw Error("element_order: no cycle within group order (bug)");
  }
  return k;
}

GroupElement random_element(const GroupDescriptor& d, Rng& rng) {
  switch (d.kind) {
    case GroupKind::Cyclic: return {d, static_cast<int>(rng.below(static_cast<std::uint64_t>(d.n)))};
    case GroupKind::Symmetric: {
      std::vector<int> p(d.n);
      std::iota(p.begin(), p.end(), 0);
      for (int i = d.n - 1; i > 0; --i) {
        int j = static_cast<int>(rng.below(static_cast<std::uint64_t>(i + 1)));
        std::swap(p[static_cast<std::size_t>(i)], p[static_cast<std::size_t>(j)]);
      }
      return {d, std::move(p)};
    }
    case GroupKind::Dihedral:
      return {d, DihedralPayload{rng.chance(0.5), static_cast<int>(rng.below(static_cast<std::uint64_t>(d.n)))}};
    case GroupKind::Quaternion8: return {d, static_cast<std::uint8_t>(rng.below(8))};
    case GroupKind::U1: return {d, wrap_angle(rng.real() * kTwoPi)};
    case GroupKind::SU2: {
      // Four Box-Muller normals, normalized.
      for (;;) {
        double u1 = rng.real(), u2 = rng.real(), u3 = rng.real(), u4 = rng.real();
        if (u1 <= 1e-12 || u3 <= 1e-12) continue;
        double r1 = std::sqrt(-2.0 * std::log(u1)), r2 = std::sqrt(-2.0 * std::log(u3));
        Quat q{r1 * std::cos(kTwoPi * u2), r1 * std::sin(kTwoPi * u2), r2 * std::cos(kTwoPi * u4),
               r2 * std::sin(kTwoPi * u4)};
        if (q.norm() > 1e-6) return {d, q.normalized()};
      }
    }
  }
  throw Error("unreachable");
}

bool Subgroup::contains(const GroupElement& g) const {
  if (!enumerated) throw PreconditionError("Subgroup::contains: subgroup not enumerated");
  std::uint64_t k = element_key(g);
  auto it = std::lower_bound(elements.begin(), elements.end(), k,
                             [](const GroupElement& e, std::uint64_t key) { return element_key(e) < key; });
  return it != elements.end() && element_key(*it) == k;
}

Subgroup subgroup_generated(const GroupDescriptor& d, const std::vector<GroupElement>& gens,
                            std::size_t cap) {
  for (const auto& g : gens)
    if (g.desc != d) throw PreconditionError("subgroup_generated: descriptor mismatch");
  if (!d.finite()) {
    Subgroup s;
    s.desc = d;
    s.enumerated = false;
    s.generators = gens;
    return s;
  }
  std::set<std::uint64_t> seen;
  std::deque<GroupElement> todo;
  std::vector<GroupElement> out;
  GroupElement e = identity(d);
  seen.insert(element_key(e));
  out.push_back(e);
  todo.push_back(e);
  std::vector<GroupElement> step = gens;
  for (const auto& g : gens) step.push_back(inverse(g));
  while (!todo.empty()) {
    GroupElement cur = todo.front();
    todo.pop_front();
    for (const auto& g : step) {
      GroupElement nxt = multiply(g, cur);
      if (seen.insert(element_key(nxt)).second) {
        if (out.size() + 1 > cap) throw BoundsError("subgroup_generated: closure cap exceeded");
        out.push_back(nxt);
        todo.push_back(nxt);
      }
    }
  }
  std::sort(out.begin(), out.end(),
            [](const GroupElement& a, const GroupElement& b) { return element_key(a) < element_key(b); });
  Subgroup s;
  s.desc = d;
  s.enumerated = true;
  s.elements = std::move(out);
  s.generators = gens;
  return s;
}

bool centralizes(const GroupElement& c, const std::vector<GroupElement>& gens) {
  for (const auto& g : gens) {
    require_same_desc(c, g, "centralizes");
    if (!equal(multiply(c, g), multiply(g, c))) return false;
  }
  return true;
}

GroupElement GroupHom::apply(const GroupElement& g) const {
  if (g.desc != source) throw PreconditionError("GroupHom::apply: element not in source group");
  switch (rule) {
    case Rule::Identity: return {target, g.payload};
    case Rule::Table: {
      auto it = table.find(element_key(g));
      if (it == table.end()) throw Error("GroupHom::apply: element missing from table (bug)");
      return it->second;
    }
    case Rule::U1Conjugate: return {target, wrap_angle(-std::get<double>(g.payload))};
    case Rule::SU2Conjugation: {
      Quat q = std::get<Quat>(g.payload);
      return {target, (conj_by * q * conj_by.conjugate()).normalized()};
    }
  }
  throw Error("unreachable");
}

std::string GroupHom::str() const {
  switch (rule) {
    case Rule::Identity: return "id";
    case Rule::U1Conjugate: return "conjugate";
    case Rule::SU2Conjugation: {
      char buf[96];
      std::snprintf(buf, sizeof buf, "conj(%.9g, %.9g, %.9g, %.9g)", conj_by.w, conj_by.x,
                    conj_by.y, conj_by.z);
      return buf;
    }
    case Rule::Table: {
      std::ostringstream os;
      os << "table{";
      auto gens = canonical_generators(source);
      for (std::size_t i = 0; i < gens.size(); ++i) {
        if (i) os << ", ";
        os << gens[i].str() << "->" << apply(gens[i]).str();
      }
      os << "}";
      return os.str();
    }
  }
  return "?";
}

std::vector<GroupElement> canonical_generators(const GroupDescriptor& d) {
  std::vector<GroupElement> out;
  switch (d.kind) {
    case GroupKind::Cyclic:
      if (d.n >= 2) out.push_back({d, 1});
      break;
    case GroupKind::Symmetric:
      for (int i = 1; i < d.n; ++i) {
        std::vector<int> p(d.n);
        std::iota(p.begin(), p.end(), 0);
        std::swap(p[static_cast<std::size_t>(i - 1)], p[static_cast<std::size_t>(i)]);
        out.push_back({d, std::move(p)});
      }
      break;
    case GroupKind::Dihedral:
      if (d.n >= 2) out.push_back({d, DihedralPayload{false, 1}});
      out.push_back({d, DihedralPayload{true, 0}});
      break;
    case GroupKind::Quaternion8:
      out.push_back({d, std::uint8_t{1}});  // i
      out.push_back({d, std::uint8_t{2}});  // j
      break;
    default: throw PreconditionError("canonical_generators: finite kinds only");
  }
  return out;
}

std::vector<std::vector<int>> group_relations(const GroupDescriptor& d) {
  std::vector<std::vector<int>> rel;
  switch (d.kind) {
    case GroupKind::Cyclic:
      if (d.n >= 2) rel.push_back(std::vector<int>(static_cast<std::size_t>(d.n), 1));
      break;
    case GroupKind::Symmetric: {
      int m = d.n - 1;  // adjacent transpositions s_1..s_m
      for (int i = 1; i <= m; ++i) rel.push_back({i, i});
      for (int i = 1; i < m; ++i) rel.push_back({i, i + 1, i, i + 1, i, i + 1});
      for (int i = 1; i <= m; ++i)
        for (int j = i + 2; j <= m; ++j) rel.push_back({i, j, i, j});
      break;
    }
    case GroupKind::Dihedral:
      if (d.n >= 2) {
        rel.push_back(std::vector<int>(static_cast<std::size_t>(d.n), 1));  // r^n
        rel.push_back({2, 2});                                              // s^2
        rel.push_back({1, 2, 1, 2});                                        // (rs)^2
      } else {
        rel.push_back({1, 1});
      }
      break;
    case GroupKind::Quaternion8:
      rel.push_back({1, 1, 1, 1});      // i^4
      rel.push_back({1, 1, -2, -2});    // i^2 j^-2
      rel.push_back({-2, 1, 2, 1});     // j^-1 i j i
      break;
    default: throw PreconditionError("group_relations: finite kinds only");
  }
  return rel;
}

namespace {

GroupElement eval_word(const std::vector<GroupElement>& gens, const std::vector<int>& word,
                       const GroupDescriptor& d) {
  GroupElement acc = identity(d);
  for (int letter : word) {
    const GroupElement& g = gens[static_cast<std::size_t>(std::abs(letter) - 1)];
    acc = multiply(acc, letter > 0 ? g : inverse(g));
  }
  return acc;
}

}  // namespace

std::optional<GroupHom> hom_from_generator_images(const GroupDescriptor& src,
                                                  const GroupDescriptor& dst,
                                                  const std::vector<GroupElement>& images) {
  if (!src.finite()) throw PreconditionError("hom_from_generator_images: finite source required");
  auto gens = canonical_generators(src);
  if (images.size() != gens.size())
    throw PreconditionError("hom_from_generator_images: image count mismatch");
  for (const auto& im : images)
    if (im.desc != dst) throw PreconditionError("hom_from_generator_images: image not in target");

  // Relations of the source presentation must map to the identity.
  for (const auto& rel : group_relations(src))
    if (!equal(eval_word(images, rel, dst), identity(dst))) return std::nullopt;

  // Closure by words; relation check above guarantees consistency, which the
  // table build re-asserts.
  GroupHom h;
  h.source = src;
  h.target = dst;
  h.rule = GroupHom::Rule::Table;
  std::deque<GroupElement> todo;
  GroupElement e = identity(src);
  h.table.emplace(element_key(e), identity(dst));
  todo.push_back(e);
  std::vector<std::pair<GroupElement, GroupElement>> step;
  for (std::size_t i = 0; i < gens.size(); ++i) {
    step.emplace_back(gens[i], images[i]);
    step.emplace_back(inverse(gens[i]), inverse(images[i]));
  }
  while (!todo.empty()) {
    GroupElement cur = todo.front();
    todo.pop_front();
    GroupElement cur_im = h.table.at(element_key(cur));
    for (const auto& [g, gi] : step) {
      GroupElement nxt = multiply(g, cur);
      GroupElement nxt_im = multiply(gi, cur_im);
      auto [it, fresh] = h.table.emplace(element_key(nxt), nxt_im);
      if (fresh) {
        todo.push_back(nxt);
      } else if (!equal(it->second, nxt_im)) {
        return std::nullopt;  // inconsistent closure
      }
    }
  }
  if (h.table.size() != src.order()) return std::nullopt;  // generators do not generate

  // Bijectivity on the finite source.
  bool injective = true;
  if (dst.finite()) {
    std::set<std::uint64_t> vals;
    for (const auto& [k, v] : h.table)
      if (!vals.insert(element_key(v)).second) injective = false;
    h.iso_flag = injective && src.order() == dst.order();
  } else {
    h.iso_flag = false;
  }
  return h;
}

GroupHom identity_hom(const GroupDescriptor& d) {
  GroupHom h;
  h.source = h.target = d;
  h.iso_flag = true;
  if (!d.finite()) {
    h.rule = GroupHom::Rule::Identity;
    if (d.kind == GroupKind::SU2) {
      h.rule = GroupHom::Rule::SU2Conjugation;
      h.conj_by = Quat{1, 0, 0, 0};
    }
    return h;
  }
  h.rule = GroupHom::Rule::Table;
  for (const auto& g : enumerate_group(d)) h.table.emplace(element_key(g), g);
  return h;
}

GroupHom conjugation_hom(const GroupElement& c) {
  const GroupDescriptor& d = c.desc;
  if (d.kind == GroupKind::U1) return identity_hom(d);  // abelian
  if (d.kind == GroupKind::SU2) return su2_conjugation_hom(std::get<Quat>(c.payload), d.tolerance);
  GroupHom h;
  h.source = h.target = d;
  h.rule = GroupHom::Rule::Table;
  h.iso_flag = true;
  GroupElement cinv = inverse(c);
  for (const auto& g : enumerate_group(d))
    h.table.emplace(element_key(g), multiply(multiply(c, g), cinv));
  return h;
}

GroupHom u1_conjugation_hom(double tol) {
  GroupHom h;
  h.source = h.target = GroupDescriptor::u1(tol);
  h.rule = GroupHom::Rule::U1Conjugate;
  h.iso_flag = true;
  return h;
}

GroupHom su2_conjugation_hom(const Quat& q, double tol) {
  GroupHom h;
  h.source = h.target = GroupDescriptor::su2(tol);
  h.rule = GroupHom::Rule::SU2Conjugation;
  h.conj_by = q.normalized();
  h.iso_flag = true;
  return h;
}

GroupHom compose_hom(const GroupHom& outer, const GroupHom& inner) {
  if (inner.target != outer.source)
    throw PreconditionError("compose_hom: inner target != outer source");
  if (inner.source.finite()) {
    GroupHom h;
    h.source = inner.source;
    h.target = outer.target;
    h.rule = GroupHom::Rule::Table;
    h.iso_flag = inner.iso_flag && outer.iso_flag;
    for (const auto& g : enumerate_group(inner.source))
      h.table.emplace(element_key(g), outer.apply(inner.apply(g)));
    return h;
  }
  // Matrix catalog algebra.
  if (inner.source.kind == GroupKind::U1) {
    bool conj = (inner.rule == GroupHom::Rule::U1Conjugate) ^ (outer.rule == GroupHom::Rule::U1Conjugate);
    GroupHom h = conj ? u1_conjugation_hom(inner.source.tolerance)
                      : identity_hom(inner.source);
    return h;
  }
  // SU2: both are conjugations (identity is conj by 1).
  Quat p = outer.rule == GroupHom::Rule::SU2Conjugation ? outer.conj_by : Quat{1, 0, 0, 0};
  Quat q = inner.rule == GroupHom::Rule::SU2Conjugation ? inner.conj_by : Quat{1, 0, 0, 0};
  return su2_conjugation_hom(p * q, inner.source.tolerance);
}

GroupHom inverse_hom(const GroupHom& h) {
  if (!h.iso_flag) throw PreconditionError("inverse_hom: hom is not an isomorphism");
  switch (h.rule) {
    case GroupHom::Rule::Identity: {
      GroupHom r = h;
      std::swap(r.source, r.target);
      return r;
    }
    case GroupHom::Rule::U1Conjugate: return h;  // involution
    case GroupHom::Rule::SU2Conjugation: return su2_conjugation_hom(h.conj_by.conjugate(), h.source.tolerance);
    case GroupHom::Rule::Table: {
      GroupHom r;
      r.source = h.target;
      r.target = h.source;
      r.rule = GroupHom::Rule::Table;
      r.iso_flag = true;
      for (const auto& g : enumerate_group(h.source))
        r.table.emplace(element_key(h.apply(g)), g);
      if (r.table.size() != h.target.order()) throw Error("inverse_hom: table not bijective (bug)");
      return r;
    }
  }
  throw Error("unreachable");
}

bool hom_equal(const GroupHom& a, const GroupHom& b) {
  if (a.source != b.source || a.target != b.target) return false;
  if (a.source.finite()) {
    for (const auto& g : enumerate_group(a.source))
      if (!equal(a.apply(g), b.apply(g))) return false;
    return true;
  }
  if (a.source.kind == GroupKind::U1)
    return (a.rule == GroupHom::Rule::U1Conjugate) == (b.rule == GroupHom::Rule::U1Conjugate);
  // SU2: conj_q == conj_{-q}; compare up to sign within tolerance.
  Quat p = a.rule == GroupHom::Rule::SU2Conjugation ? a.conj_by : Quat{1, 0, 0, 0};
  Quat q = b.rule == GroupHom::Rule::SU2Conjugation ? b.conj_by : Quat{1, 0, 0, 0};
  Quat qn{-q.w, -q.x, -q.y, -q.z};
  double tol = std::max(a.source.tolerance, 1e-9);
  return p.dist(q) <= tol || p.dist(qn) <= tol;
}

std::optional<std::vector<int>> word_for_element(const std::vector<GroupElement>& gens,
                                                 const GroupElement& target, int max_depth,
                                                 std::size_t state_cap) {
  const GroupDescriptor& d = target.desc;
  GroupElement e = identity(d);
  if (equal(e, target)) return std::vector<int>{};
  struct Node {
    GroupElement value;
    std::vector<int> word;
  };
  bool finite = d.finite();
  std::set<std::uint64_t> seen_keys;
  std::vector<GroupElement> seen_values;
  if (finite)
    seen_keys.insert(element_key(e));
  else
    seen_values.push_back(e);
  auto known = [&](const GroupElement& g) {
    if (finite) return !seen_keys.insert(element_key(g)).second;
    for (const auto& s : seen_values)
      if (equal(s, g)) return true;
    if (seen_values.size() < state_cap) seen_values.push_back(g);
    return false;
  };
  std::deque<Node> queue{{e, {}}};
  while (!queue.empty()) {
    Node cur = std::move(queue.front());
    queue.pop_front();
    if (!finite && static_cast<int>(cur.word.size()) >= max_depth) continue;
    for (std::size_t i = 0; i < gens.size(); ++i) {
      for (int sign : {+1, -1}) {
        int letter = sign * (static_cast<int>(i) + 1);
        if (!cur.word.empty() && cur.word.back() == -letter) continue;
        GroupElement value = multiply(sign > 0 ? gens[i] : inverse(gens[i]), cur.value);
        std::vector<int> word = cur.word;
        word.push_back(letter);
        if (equal(value, target)) return word;
        if (!known(value)) queue.push_back({value, std::move(word)});
      }
    }
  }
  return std::nullopt;
}

std::vector<GroupHom> isomorphism_search(const GroupDescriptor& src, const GroupDescriptor& dst,
                                         std::uint64_t max_order) {
  std::vector<GroupHom> found;
  if (src.finite() != dst.finite()) return found;
  if (!src.finite()) {
    if (src.kind != dst.kind) return found;
    if (src.kind == GroupKind::U1) {
      found.push_back(identity_hom(src));
      found.push_back(u1_conjugation_hom(src.tolerance));
    } else {
      found.push_back(identity_hom(src));
      found.push_back(su2_conjugation_hom(Quat{0, 1, 0, 0}, src.tolerance));
      found.push_back(su2_conjugation_hom(Quat{0, 0, 1, 0}, src.tolerance));
      found.push_back(su2_conjugation_hom(Quat{0, 0, 0, 1}, src.tolerance));
    }
    return found;
  }
  if (src.order() != dst.order()) return found;
  if (src.order() > max_order)
    throw BoundsError("isomorphism_search: group order " + std::to_string(src.order()) +
                      " exceeds cap " + std::to_string(max_order));

  auto gens = canonical_generators(src);
  if (gens.empty()) {
    // Trivial group; the empty map is the unique isomorphism.
    if (dst.order() == 1) {
      auto h = hom_from_generator_images(src, dst, {});
      if (h && h->iso_flag) found.push_back(*h);
    }
    return found;
  }
  auto dst_elems = enumerate_group(dst);
  std::vector<int> gen_orders;
  for (const auto& g : gens) gen_orders.push_back(element_order(g));
  std::vector<std::vector<GroupElement>> candidates(gens.size());
  for (std::size_t i = 0; i < gens.size(); ++i)
    for (const auto& e : dst_elems)
      if (element_order(e) == gen_orders[i]) candidates[i].push_back(e);

  std::vector<GroupElement> pick;
  auto rec = [&](auto&& self, std::size_t i) -> void {
    if (i == gens.size()) {
      auto h = hom_from_generator_images(src, dst, pick);
      if (h && h->iso_flag) found.push_back(*h);
      return;
    }
    for (const auto& c : candidates[i]) {
      pick.push_back(c);
      self(self, i + 1);
      pick.pop_back();
    }
  };
  rec(rec, 0);
  return found;
}

}  // namespace hol
