#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "mmiso/isotropy.hpp"

namespace mmiso {

/// Termwise action on a decomposition; order of terms preserved, and
/// decomposition_sum(result) == apply(g, decomposition_sum(d)).
Decomposition act_on_decomposition(const IsotropyElement& g, const Decomposition& d);

/// Multiset equality of the rank-one terms under decomposable_equal,
/// decided by a perfect matching on the equality relation.
bool decompositions_equal_as_multisets(const Decomposition& d1, const Decomposition& d2);

/// All invertible n x n matrices over GF(q), in odometer order.
std::vector<Mat> all_invertible(int n, std::int64_t q);

enum class EnumerationMode { Small, Full };

/// Indexable enumeration of the isotropy group of <m,n,p> over GF(q):
/// raw triples of invertible matrices deduplicated by their normalized form
/// (one representative per scalar class), crossed with the admissible
/// permutation parts in Full mode. Every element appears exactly once.
class GroupEnumeration {
public:
    static constexpr std::uint64_t default_budget = 100'000'000;

    GroupEnumeration(const Shape& shape, std::int64_t q, EnumerationMode mode,
                     std::uint64_t budget = default_budget);

    const Shape& shape() const { return shape_; }
    const FieldSpec& field() const { return field_; }
    std::uint64_t size() const;
    /// Element by index; normalized by construction. Index order is fixed:
    /// permutation part outermost, then the a, b, c representative lists.
    IsotropyElement element(std::uint64_t index) const;

    const std::vector<Mat>& reps(int factor) const { return reps_[factor]; }
    const std::vector<Perm3>& perms() const { return perms_; }

private:
    Shape shape_;
    FieldSpec field_;
    std::vector<Mat> reps_[3];
    std::vector<Perm3> perms_;
};

struct StabilizerResult {
    std::vector<IsotropyElement> elements; // normalized, enumeration order
    std::uint64_t order = 0;
    bool closed = false; // closure under compose/invert verified
};

/// Exhaustive stabilizer of a decomposition of <m,n,p> inside the full
/// isotropy group over GF(q). The decomposition must sum to the tensor
/// (NotADecompositionError otherwise). Work is partitioned over `workers`
/// threads; the result is independent of the worker count.
StabilizerResult stabilizer(const Decomposition& d, std::int64_t q,
                            std::uint64_t budget = GroupEnumeration::default_budget,
                            int workers = 1);

/// Searches for g with act_on_decomposition(g, d1) == d2 as multisets.
/// Returns the first witness in enumeration order, or nullopt.
std::optional<IsotropyElement> orbit_equivalent(
    const Decomposition& d1, const Decomposition& d2, std::int64_t q,
    std::uint64_t budget = GroupEnumeration::default_budget, int workers = 1);

} // namespace mmiso
