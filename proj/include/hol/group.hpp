#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "hol/error.hpp"

namespace hol {

enum class GroupKind { Cyclic, Symmetric, Dihedral, Quaternion8, U1, SU2 };

std::string kind_name(GroupKind k);

// Structure group of a gauge field. Finite kinds compare exactly; the two
// matrix kinds (U1, SU2) compare within `tolerance` in their natural metric
// (arc distance on the circle, Euclidean 4-distance on unit quaternions).
struct GroupDescriptor {
  GroupKind kind = GroupKind::Cyclic;
  int n = 1;               // order parameter for cyclic / symmetric / dihedral
  double tolerance = 0.0;  // > 0 exactly for matrix kinds

  static GroupDescriptor cyclic(int n);
  static GroupDescriptor symmetric(int n);
  static GroupDescriptor dihedral(int n);
  static GroupDescriptor quaternion8();
  static GroupDescriptor u1(double tol = 1e-9);
  static GroupDescriptor su2(double tol = 1e-9);

  bool finite() const { return kind != GroupKind::U1 && kind != GroupKind::SU2; }
  std::uint64_t order() const;  // finite kinds only
  bool operator==(const GroupDescriptor& o) const;
  bool operator!=(const GroupDescriptor& o) const { return !(*this == o); }
  std::string str() const;
};

struct Quat {
  double w = 1, x = 0, y = 0, z = 0;

  bool operator==(const Quat& o) const = default;
  Quat operator*(const Quat& o) const {
    return {w * o.w - x * o.x - y * o.y - z * o.z,
            w * o.x + x * o.w + y * o.z - z * o.y,
            w * o.y - x * o.z + y * o.w + z * o.x,
            w * o.z + x * o.y - y * o.x + z * o.w};
  }
  Quat conjugate() const { return {w, -x, -y, -z}; }
  double norm() const;
  Quat normalized() const;
  double dist(const Quat& o) const;
};

struct DihedralPayload {
  bool reflection = false;
  int k = 0;

  bool operator==(const DihedralPayload& o) const = default;
};

// Element of a structure group. The payload alternative is fixed by the
// descriptor kind: residue (cyclic), one-line permutation (symmetric),
// rotation/reflection index (dihedral), unit index 0..7 = 1,i,j,k,-1,-i,-j,-k
// (quaternion8), angle in [0, 2pi) (U1), unit quaternion (SU2).
struct GroupElement {
  GroupDescriptor desc;
  std::variant<int, std::vector<int>, DihedralPayload, std::uint8_t, double, Quat> payload;

  std::string str() const;
};

GroupElement identity(const GroupDescriptor& d);
GroupElement multiply(const GroupElement& a, const GroupElement& b);
GroupElement inverse(const GroupElement& a);
bool equal(const GroupElement& a, const GroupElement& b);
// Metric deviation between elements: 0/1 for finite kinds, the natural
// metric for matrix kinds. Used for certificate residual statistics.
double distance(const GroupElement& a, const GroupElement& b);
GroupElement power(const GroupElement& a, long long k);

// Rank of an element in the canonical enumeration. Finite kinds only.
std::uint64_t element_key(const GroupElement& a);
std::vector<GroupElement> enumerate_group(const GroupDescriptor& d);
int element_order(const GroupElement& a);  // finite kinds only

GroupElement random_element(const GroupDescriptor& d, class Rng& rng);

// Subgroup value. Finite kinds carry the full closure (sorted by key);
// matrix kinds carry generators only, since the closure may be infinite.
struct Subgroup {
  GroupDescriptor desc;
  bool enumerated = true;
  std::vector<GroupElement> elements;
  std::vector<GroupElement> generators;

  std::size_t size() const { return elements.size(); }
  bool contains(const GroupElement& g) const;  // enumerated subgroups only
};

Subgroup subgroup_generated(const GroupDescriptor& d, const std::vector<GroupElement>& gens,
                            std::size_t cap = 1000000);

// True iff c commutes with every generator (within tolerance for matrix kinds).
bool centralizes(const GroupElement& c, const std::vector<GroupElement>& gens);

// Group homomorphism. Finite sources carry a full element table built from
// generator images; matrix kinds are restricted to the automorphism catalog
// (identity, complex conjugation on U1, conjugation by a unit quaternion on SU2).
struct GroupHom {
  enum class Rule { Table, Identity, U1Conjugate, SU2Conjugation };

  GroupDescriptor source, target;
  Rule rule = Rule::Identity;
  std::map<std::uint64_t, GroupElement> table;  // finite sources
  Quat conj_by{1, 0, 0, 0};                     // SU2Conjugation only
  bool iso_flag = false;

  GroupElement apply(const GroupElement& g) const;
  std::string str() const;
};

// Builds the hom determined by images of canonical_generators(src).
// Returns nullopt when the images violate the source relations or the
// word closure is inconsistent. iso_flag reflects bijectivity.
std::optional<GroupHom> hom_from_generator_images(const GroupDescriptor& src,
                                                  const GroupDescriptor& dst,
                                                  const std::vector<GroupElement>& images);

GroupHom identity_hom(const GroupDescriptor& d);
// x -> c x c^-1 on c's own group.
GroupHom conjugation_hom(const GroupElement& c);
GroupHom u1_conjugation_hom(double tol = 1e-9);
GroupHom su2_conjugation_hom(const Quat& q, double tol = 1e-9);
GroupHom compose_hom(const GroupHom& outer, const GroupHom& inner);
GroupHom inverse_hom(const GroupHom& h);
bool hom_equal(const GroupHom& a, const GroupHom& b);

std::vector<GroupElement> canonical_generators(const GroupDescriptor& d);
// Relator words over canonical generators; letters are +-(index+1).
std::vector<std::vector<int>> group_relations(const GroupDescriptor& d);

// All isomorphisms src -> dst found by generator-image backtracking (finite
// kinds, order <= max_order) or by catalog lookup (matrix kinds). An empty
// result means no isomorphism among the searched candidates.
std::vector<GroupHom> isomorphism_search(const GroupDescriptor& src, const GroupDescriptor& dst,
                                         std::uint64_t max_order = 64);

// Least reduced word over `gens` whose product equals `target`: exact
// breadth-first enumeration for finite kinds, tolerance-deduplicated and
// depth/state-capped for matrix kinds. Letters are +-(index+1), later
// letters multiplying on the left.
std::optional<std::vector<int>> word_for_element(const std::vector<GroupElement>& gens,
                                                 const GroupElement& target, int max_depth = 16,
                                                 std::size_t state_cap = 20000);

}  // namespace hol
