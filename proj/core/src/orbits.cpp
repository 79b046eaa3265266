#include "mmiso/orbits.hpp"

#include <algorithm>
#include <functional>
#include <limits>
#include <thread>
#include <unordered_set>

namespace mmiso {

Decomposition act_on_decomposition(const IsotropyElement& g, const Decomposition& d) {
    d.validate();
    if (!(g.shape() == d.shape) || !(g.field() == d.field))
        throw DimensionMismatchError("element/decomposition mismatch");
    Decomposition out;
    out.shape = d.shape;
    out.field = d.field;
    out.terms.reserve(d.terms.size());
    for (const RankOneTriple& t : d.terms)
        out.terms.push_back(apply_to_rank_one(g, t));
    return out;
}

bool decompositions_equal_as_multisets(const Decomposition& d1, const Decomposition& d2) {
    if (!(d1.shape == d2.shape) || !(d1.field == d2.field))
        throw DimensionMismatchError("decomposition comparison mismatch");
    const int n = static_cast<int>(d1.terms.size());
    if (n != static_cast<int>(d2.terms.size())) return false;

    std::vector<std::vector<int>> candidates(n);
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j)
            if (decomposable_equal(d1.terms[i], d2.terms[j])) candidates[i].push_back(j);

    // Perfect matching by augmenting paths.
    std::vector<int> match_of(n, -1);
    std::vector<char> visited(n, 0);
    auto augment = [&](auto&& self, int i) -> bool {
        for (int j : candidates[i]) {
            if (visited[j]) continue;
            visited[j] = 1;
            if (match_of[j] < 0 || self(self, match_of[j])) {
                match_of[j] = i;
                return true;
            }
        }
        return false;
    };
    for (int i = 0; i < n; ++i) {
        std::fill(visited.begin(), visited.end(), 0);
        if (!augment(augment, i)) return false;
    }
    return true;
}

std::vector<Mat> all_invertible(int n, std::int64_t q) {
    const FieldSpec f = FieldSpec::prime_field(q);
    const int cells = n * n;
    std::vector<std::int64_t> odo(cells, 0);
    std::vector<Mat> out;
    for (;;) {
        Mat m(n, n, f);
        for (int i = 0; i < cells; ++i)
            m.at(i / n, i % n) = Scalar::of_residue(f, odo[i]);
        if (m.is_invertible()) out.push_back(std::move(m));
        int pos = cells - 1;
        while (pos >= 0 && odo[pos] == q - 1) odo[pos--] = 0;
        if (pos < 0) break;
        ++odo[pos];
    }
    return out;
}

namespace {

// One representative per scalar class: matrices whose first nonzero entry is 1.
// |GL| must equal (q-1) * |reps|; anything else flags a broken enumeration.
// The identity is moved to the front so element index 0 is the group identity.
std::vector<Mat> scalar_class_reps(int n, std::int64_t q) {
    std::vector<Mat> gl = all_invertible(n, q);
    std::unordered_set<std::string> seen;
    std::vector<Mat> reps;
    for (Mat& m : gl) {
        Mat norm = m.normalized();
        if (seen.insert(norm.key()).second) reps.push_back(std::move(norm));
    }
    if (gl.size() != reps.size() * static_cast<std::size_t>(q - 1))
        throw Error("scalar class dedup count mismatch");
    for (std::size_t i = 0; i < reps.size(); ++i)
        if (reps[i].is_identity()) {
            std::rotate(reps.begin(), reps.begin() + static_cast<std::ptrdiff_t>(i),
                        reps.begin() + static_cast<std::ptrdiff_t>(i) + 1);
            break;
        }
    return reps;
}

std::uint64_t saturating_mul(std::uint64_t a, std::uint64_t b) {
    const unsigned __int128 p = static_cast<unsigned __int128>(a) * b;
    const std::uint64_t cap = std::numeric_limits<std::uint64_t>::max();
    return p > cap ? cap : static_cast<std::uint64_t>(p);
}

std::uint64_t gl_order(int n, std::int64_t q) {
    // product over i of (q^n - q^i); used only to guard the raw-triple budget.
    std::uint64_t qn = 1;
    for (int i = 0; i < n; ++i) qn = saturating_mul(qn, static_cast<std::uint64_t>(q));
    std::uint64_t order = 1, qi = 1;
    for (int i = 0; i < n; ++i) {
        order = saturating_mul(order, qn - qi);
        qi = saturating_mul(qi, static_cast<std::uint64_t>(q));
    }
    return order;
}

} // namespace

GroupEnumeration::GroupEnumeration(const Shape& shape, std::int64_t q, EnumerationMode mode,
                                   std::uint64_t budget)
    : shape_(shape), field_(FieldSpec::prime_field(q)) {
    if (shape.m == 1 && shape.n == 1 && shape.p == 1)
        throw DimensionMismatchError("group enumeration needs (m,n,p) != (1,1,1)");
    const std::uint64_t raw = saturating_mul(
        saturating_mul(gl_order(shape.m, q), gl_order(shape.n, q)), gl_order(shape.p, q));
    if (raw > budget)
        throw BudgetExceededError("raw triple count " + std::to_string(raw) +
                                  " exceeds budget " + std::to_string(budget));
    reps_[0] = scalar_class_reps(shape.m, q);
    reps_[1] = shape.n == shape.m ? reps_[0] : scalar_class_reps(shape.n, q);
    reps_[2] = shape.p == shape.m ? reps_[0]
               : shape.p == shape.n ? reps_[1]
                                    : scalar_class_reps(shape.p, q);
    perms_ = mode == EnumerationMode::Small ? std::vector<Perm3>{Perm3::id}
                                            : admissible_perms(shape);
}

std::uint64_t GroupEnumeration::size() const {
    return static_cast<std::uint64_t>(perms_.size()) * reps_[0].size() * reps_[1].size() *
           reps_[2].size();
}

IsotropyElement GroupEnumeration::element(std::uint64_t index) const {
    const std::uint64_t na = reps_[0].size(), nb = reps_[1].size(), nc = reps_[2].size();
    const std::uint64_t ic = index % nc;
    index /= nc;
    const std::uint64_t ib = index % nb;
    index /= nb;
    const std::uint64_t ia = index % na;
    index /= na;
    return IsotropyElement(shape_, perms_[static_cast<std::size_t>(index)],
                           reps_[0][static_cast<std::size_t>(ia)],
                           reps_[1][static_cast<std::size_t>(ib)],
                           reps_[2][static_cast<std::size_t>(ic)]);
}

namespace {

// Deterministic parallel filter: indices are scanned in stripes and hits are
// merged in index order, so the output does not depend on the worker count.
std::vector<std::uint64_t> parallel_filter(std::uint64_t count, int workers,
                                           const std::function<bool(std::uint64_t)>& pred,
                                           bool first_only) {
    workers = std::max(1, workers);
    std::vector<std::vector<std::uint64_t>> hits(workers);
    if (workers == 1) {
        for (std::uint64_t i = 0; i < count; ++i)
            if (pred(i)) {
                hits[0].push_back(i);
                if (first_only) break;
            }
    } else {
        std::vector<std::thread> pool;
        pool.reserve(workers);
        for (int w = 0; w < workers; ++w)
            pool.emplace_back([&, w] {
                for (std::uint64_t i = w; i < count; i += static_cast<std::uint64_t>(workers))
                    if (pred(i)) {
                        hits[w].push_back(i);
                        if (first_only) break;
                    }
            });
        for (std::thread& t : pool) t.join();
    }
    std::vector<std::uint64_t> merged;
    for (const auto& h : hits) merged.insert(merged.end(), h.begin(), h.end());
    std::sort(merged.begin(), merged.end());
    return merged;
}

} // namespace

StabilizerResult stabilizer(const Decomposition& d, std::int64_t q, std::uint64_t budget,
                            int workers) {
    const FieldSpec f = FieldSpec::prime_field(q);
    const Decomposition dq = d.field == f ? d : decomposition_to_field(d, f);
    if (decomposition_sum(dq) != mmt_tensor(dq.shape, f))
        throw NotADecompositionError("terms do not sum to the multiplication tensor");

    const GroupEnumeration group(dq.shape, q, EnumerationMode::Full, budget);
    const auto hit = [&](std::uint64_t i) {
        return decompositions_equal_as_multisets(act_on_decomposition(group.element(i), dq), dq);
    };
    const std::vector<std::uint64_t> indices =
        parallel_filter(group.size(), workers, hit, /*first_only=*/false);

    StabilizerResult out;
    out.elements.reserve(indices.size());
    for (std::uint64_t i : indices) out.elements.push_back(group.element(i));
    out.order = out.elements.size();

    // The exhaustive filter of a group action is a subgroup; verify anyway.
    std::unordered_set<std::string> keys;
    for (const IsotropyElement& g : out.elements) keys.insert(element_key(g));
    out.closed = keys.count(element_key(identity_element(dq.shape, f))) > 0;
    for (const IsotropyElement& g : out.elements) {
        if (!out.closed) break;
        if (!keys.count(element_key(invert(g)))) out.closed = false;
        for (const IsotropyElement& h : out.elements)
            if (!keys.count(element_key(compose(g, h)))) {
                out.closed = false;
                break;
            }
    }
    return out;
}

std::optional<IsotropyElement> orbit_equivalent(const Decomposition& d1, const Decomposition& d2,
                                                std::int64_t q, std::uint64_t budget,
                                                int workers) {
    const FieldSpec f = FieldSpec::prime_field(q);
    const Decomposition a = d1.field == f ? d1 : decomposition_to_field(d1, f);
    const Decomposition b = d2.field == f ? d2 : decomposition_to_field(d2, f);
    if (!(a.shape == b.shape))
        throw DimensionMismatchError("orbit comparison shape mismatch");
    const Tensor3 t = mmt_tensor(a.shape, f);
    if (decomposition_sum(a) != t || decomposition_sum(b) != t)
        throw NotADecompositionError("terms do not sum to the multiplication tensor");
    if (a.terms.size() != b.terms.size()) return std::nullopt;

    const GroupEnumeration group(a.shape, q, EnumerationMode::Full, budget);
    const auto hit = [&](std::uint64_t i) {
        return decompositions_equal_as_multisets(act_on_decomposition(group.element(i), a), b);
    };
    const std::vector<std::uint64_t> indices =
        parallel_filter(group.size(), workers, hit, /*first_only=*/true);
    if (indices.empty()) return std::nullopt;
    return group.element(indices.front());
}

} // namespace mmiso
