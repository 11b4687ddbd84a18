#pragma once

// Homomorphisms, congruences, quotients and subalgebras of finite monounary
// algebras. Composition convention, repo-wide: compose(j, phi)(x) = j(phi(x)),
// and the lifting equation reads j(phi(x)) = f(x).

#include <functional>
#include <optional>
#include <vector>

#include "monoqp/algebra.hpp"

namespace monoqp {

/// True iff map commutes with the operations: tgt.step(map[x]) ==
/// map[src.step(x)] for all x. Throws std::invalid_argument on a length or
/// range mismatch.
bool is_homomorphism(const MonounaryAlgebra& src, const MonounaryAlgebra& tgt,
                     const std::vector<int>& map);

struct Homomorphism {
    MonounaryAlgebra source;
    MonounaryAlgebra target;
    std::vector<int> map;  // map[x] = image of x

    /// Validates the commuting condition; throws std::invalid_argument.
    Homomorphism(MonounaryAlgebra src, MonounaryAlgebra tgt, std::vector<int> m);

    int operator()(int x) const { return map[x]; }
    bool is_surjective() const;
    bool is_endomorphism() const { return source == target; }

    bool operator==(const Homomorphism&) const = default;
};

/// j after phi: x -> j(phi(x)). Throws if phi's target differs from j's source.
Homomorphism compose(const Homomorphism& j, const Homomorphism& phi);

/// Visit every homomorphism src -> tgt exactly once, in lexicographic order
/// of the map sequence. Choosing an image forces the images of the whole
/// forward orbit, which the backtracking propagates. Return false from the
/// callback to stop early.
void for_each_hom(const MonounaryAlgebra& src, const MonounaryAlgebra& tgt,
                  const std::function<bool(const std::vector<int>&)>& visit);

std::vector<Homomorphism> enumerate_homs(const MonounaryAlgebra& src,
                                         const MonounaryAlgebra& tgt);
std::vector<Homomorphism> enumerate_epis(const MonounaryAlgebra& src,
                                         const MonounaryAlgebra& tgt);
std::vector<Homomorphism> enumerate_endos(const MonounaryAlgebra& a);

class Congruence {
public:
    /// Validates alpha-compatibility: related elements have related images.
    /// Class ids are normalized to first-occurrence order.
    Congruence(MonounaryAlgebra carrier, const std::vector<int>& class_id);

    const MonounaryAlgebra& carrier() const noexcept { return carrier_; }
    const std::vector<int>& class_ids() const noexcept { return class_id_; }
    int num_classes() const noexcept { return num_classes_; }
    int class_of(int x) const { return class_id_.at(x); }
    bool same_class(int x, int y) const { return class_id_.at(x) == class_id_.at(y); }
    /// Classes as sorted element lists, indexed by class id.
    std::vector<std::vector<int>> classes() const;

    bool operator==(const Congruence&) const = default;

private:
    MonounaryAlgebra carrier_;
    std::vector<int> class_id_;
    int num_classes_ = 0;
};

struct QuotientAlgebra {
    MonounaryAlgebra algebra;  // carrier = class ids of theta
    Homomorphism projection;   // x -> [x]; surjective by construction
};

/// Kernel of h: classes are the fibers of h.
Congruence kernel(const Homomorphism& h);

/// All congruences of a, exactly once, in lexicographic order of the
/// restricted-growth class-id string. Throws GuardError above max_n.
std::vector<Congruence> congruences(const MonounaryAlgebra& a, int max_n = 8);

/// Quotient by theta. The class operation is asserted independent of the
/// representative during construction. Throws std::invalid_argument if theta
/// does not belong to a.
QuotientAlgebra quotient(const MonounaryAlgebra& a, const Congruence& theta);

/// The smallest congruence collapsing, within each connected component, all
/// elements of the subalgebra U. Direct construction from the relation:
/// (x,y) related iff x == y, or x and y share a component and both lie in U.
/// Throws std::invalid_argument if U is empty or not closed under the
/// operation. Elements of u are 0-based.
Congruence theta_u(const MonounaryAlgebra& a, const std::vector<int>& u);

/// Same congruence built the long way: start from the pairs of U-elements
/// sharing a component, close under the operation and transitivity. Kept as
/// an independent code path; tests compare it against theta_u.
Congruence theta_u_closure(const MonounaryAlgebra& a, const std::vector<int>& u);

/// All nonempty subsets closed under the operation, each once, as sorted
/// element lists, in ascending bitmask order. Throws GuardError above max_n.
std::vector<std::vector<int>> subalgebras(const MonounaryAlgebra& a, int max_n = 8);

}  // namespace monoqp
