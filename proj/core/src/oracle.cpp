#include "polycount/oracle.hpp"

#include <algorithm>
#include <limits>
#include <map>
#include <mutex>
#include <stdexcept>
#include <unordered_map>
#include <unordered_set>
#include <utility>

namespace polycount {

namespace {

constexpr std::size_t npos = std::numeric_limits<std::size_t>::max();

std::string key_of(const DensePoly& f)
{
    auto c = f.coefficients();
    return std::string(c.begin(), c.end());
}

} // namespace

// -- PrimeField ---------------------------------------------------------------

PrimeField::PrimeField(unsigned p) : p_(p)
{
    if (!is_prime(p) || p >= 256)
        throw std::invalid_argument("oracle requires a prime field F_p with p < 256 (got " +
                                    std::to_string(p) + ")");
}

unsigned PrimeField::inv(unsigned a) const
{
    a %= p_;
    if (a == 0)
        throw std::domain_error("PrimeField: zero has no inverse");
    // a^(p-2) mod p
    unsigned result = 1, base = a, e = p_ - 2;
    while (e) {
        if (e & 1)
            result = mul(result, base);
        base = mul(base, base);
        e >>= 1;
    }
    return result;
}

// -- MonomialBasis --------------------------------------------------------------

std::shared_ptr<const MonomialBasis> MonomialBasis::get(unsigned m, unsigned degree_bound)
{
    static std::mutex mutex;
    static std::map<std::pair<unsigned, unsigned>, std::shared_ptr<const MonomialBasis>> cache;
    std::lock_guard lock(mutex);
    auto& slot = cache[{m, degree_bound}];
    if (!slot)
        slot = std::make_shared<const MonomialBasis>(m, degree_bound);
    return slot;
}

namespace {

// Exponent vectors of total degree t, lexicographically descending.
void compositions(unsigned m, unsigned t, std::vector<unsigned>& prefix,
                  std::vector<unsigned>& out)
{
    if (prefix.size() + 1 == m) {
        out.insert(out.end(), prefix.begin(), prefix.end());
        out.push_back(t);
        return;
    }
    for (unsigned e = t + 1; e-- > 0;) {
        prefix.push_back(e);
        compositions(m, t - e, prefix, out);
        prefix.pop_back();
    }
}

} // namespace

MonomialBasis::MonomialBasis(unsigned m, unsigned degree_bound) : m_(m), bound_(degree_bound)
{
    if (m == 0)
        throw std::invalid_argument("MonomialBasis: m must be at least 1");

    std::uint64_t table = 1;
    for (unsigned i = 0; i < m; ++i) {
        table *= degree_bound + 1;
        if (table > (std::uint64_t{1} << 24))
            throw std::invalid_argument("MonomialBasis: (degree_bound+1)^m too large");
    }

    std::vector<unsigned> prefix;
    for (unsigned t = 0; t <= degree_bound; ++t) {
        offsets_.push_back(degrees_.size());
        const std::size_t before = exps_.size();
        compositions(m, t, prefix, exps_);
        degrees_.insert(degrees_.end(), (exps_.size() - before) / m, t);
    }
    offsets_.push_back(degrees_.size());

    lookup_.assign(table, npos);
    for (std::size_t i = 0; i < size(); ++i)
        lookup_[key(exponents(i))] = i;
}

std::uint64_t MonomialBasis::key(std::span<const unsigned> exponents) const
{
    std::uint64_t k = 0;
    for (std::size_t i = exponents.size(); i-- > 0;)
        k = k * (bound_ + 1) + exponents[i];
    return k;
}

std::size_t MonomialBasis::index_of(std::span<const unsigned> exponents) const
{
    if (exponents.size() != m_)
        throw std::out_of_range("MonomialBasis: wrong number of exponents");
    unsigned total = 0;
    for (unsigned e : exponents)
        total += e;
    if (total > bound_)
        throw std::out_of_range("MonomialBasis: monomial exceeds degree bound");
    return lookup_[key(exponents)];
}

// -- DensePoly ----------------------------------------------------------------

DensePoly::DensePoly(PrimeField field, std::shared_ptr<const MonomialBasis> basis)
    : field_(field), basis_(std::move(basis)), coeffs_(basis_->size(), 0)
{
}

DensePoly::DensePoly(PrimeField field, unsigned m, unsigned degree_bound)
    : DensePoly(field, MonomialBasis::get(m, degree_bound))
{
}

DensePoly DensePoly::constant(PrimeField field, unsigned m, unsigned value)
{
    DensePoly f(field, m, 0);
    f.set_coefficient_at(0, value);
    return f;
}

DensePoly DensePoly::variable(PrimeField field, unsigned m, unsigned index)
{
    if (index >= m)
        throw std::invalid_argument("DensePoly::variable: index out of range");
    DensePoly f(field, m, 1);
    std::vector<unsigned> e(m, 0);
    e[index] = 1;
    f.set_coefficient(e, 1);
    return f;
}

unsigned DensePoly::coefficient(std::span<const unsigned> exponents) const
{
    unsigned total = 0;
    for (unsigned e : exponents)
        total += e;
    if (total > degree_bound())
        return 0;
    return coeffs_[basis_->index_of(exponents)];
}

void DensePoly::set_coefficient(std::span<const unsigned> exponents, unsigned value)
{
    set_coefficient_at(basis_->index_of(exponents), value);
}

void DensePoly::set_coefficient_at(std::size_t index, unsigned value)
{
    coeffs_.at(index) = static_cast<std::uint8_t>(value % field_.p());
}

bool DensePoly::is_zero() const noexcept
{
    return std::all_of(coeffs_.begin(), coeffs_.end(), [](std::uint8_t c) { return c == 0; });
}

int DensePoly::total_degree() const noexcept
{
    for (std::size_t i = coeffs_.size(); i-- > 0;)
        if (coeffs_[i] != 0)
            return static_cast<int>(basis_->degree(i));
    return -1;
}

bool DensePoly::is_normalized() const noexcept
{
    const int deg = total_degree();
    if (deg < 0)
        return false;
    const std::size_t begin = basis_->degree_begin(static_cast<unsigned>(deg));
    for (std::size_t i = begin; i < coeffs_.size(); ++i)
        if (coeffs_[i] != 0)
            return coeffs_[i] == 1;
    return false;
}

DensePoly DensePoly::with_degree_bound(unsigned degree_bound) const
{
    if (total_degree() > static_cast<int>(degree_bound))
        throw std::invalid_argument("with_degree_bound: bound below total degree");
    DensePoly g(field_, m(), degree_bound);
    const std::size_t n = std::min(coeffs_.size(), g.coeffs_.size());
    // Both bases list monomials in the same order up to the smaller bound.
    std::copy_n(coeffs_.begin(), n, g.coeffs_.begin());
    return g;
}

std::string DensePoly::canonical_hex() const
{
    static constexpr char digits[] = "0123456789abcdef";
    std::string out;
    out.reserve(2 * coeffs_.size());
    for (std::uint8_t c : coeffs_) {
        out.push_back(digits[c >> 4]);
        out.push_back(digits[c & 0xf]);
    }
    return out;
}

std::string DensePoly::to_string() const
{
    if (is_zero())
        return "0";
    const unsigned nvars = m();
    auto var_name = [nvars](unsigned i) {
        if (nvars <= 3)
            return std::string(1, "xyz"[i]);
        return "x" + std::to_string(i + 1);
    };

    std::string out;
    for (unsigned t = degree_bound() + 1; t-- > 0;) {
        for (std::size_t i = basis_->degree_begin(t); i < basis_->degree_begin(t + 1); ++i) {
            const unsigned c = coeffs_[i];
            if (c == 0)
                continue;
            std::string term;
            if (c != 1 || t == 0)
                term = std::to_string(c);
            auto e = basis_->exponents(i);
            for (unsigned v = 0; v < nvars; ++v) {
                if (e[v] == 0)
                    continue;
                if (!term.empty())
                    term += '*';
                term += var_name(v);
                if (e[v] > 1)
                    term += '^' + std::to_string(e[v]);
            }
            if (!out.empty())
                out += " + ";
            out += term;
        }
    }
    return out;
}

DensePoly poly_multiply(const DensePoly& a, const DensePoly& b)
{
    if (!(a.field() == b.field()))
        throw std::invalid_argument("poly_multiply: operands over different fields");
    if (a.m() != b.m())
        throw std::invalid_argument("poly_multiply: operands in different variable counts");

    DensePoly r(a.field(), MonomialBasis::get(a.m(), a.degree_bound() + b.degree_bound()));
    const auto& field = a.field();
    const unsigned m = a.m();
    std::vector<unsigned> e(m);
    std::vector<unsigned> acc(r.coeffs_.size(), 0);

    for (std::size_t i = 0; i < a.coeffs_.size(); ++i) {
        if (a.coeffs_[i] == 0)
            continue;
        auto ea = a.basis_->exponents(i);
        for (std::size_t j = 0; j < b.coeffs_.size(); ++j) {
            if (b.coeffs_[j] == 0)
                continue;
            auto eb = b.basis_->exponents(j);
            for (unsigned v = 0; v < m; ++v)
                e[v] = ea[v] + eb[v];
            const std::size_t idx = r.basis_->index_of(e);
            acc[idx] = field.add(acc[idx], field.mul(a.coeffs_[i], b.coeffs_[j]));
        }
    }
    for (std::size_t i = 0; i < acc.size(); ++i)
        r.coeffs_[i] = static_cast<std::uint8_t>(acc[i]);
    return r;
}

// -- Enumeration --------------------------------------------------------------

std::uint64_t enumeration_candidates(const PrimeField& field, unsigned m, unsigned d)
{
    const std::uint64_t monomials = binomial(std::uint64_t{m} + d, m).to_u64();
    std::uint64_t total = 1;
    for (std::uint64_t i = 0; i < monomials; ++i) {
        if (total > std::numeric_limits<std::uint64_t>::max() / field.p())
            return std::numeric_limits<std::uint64_t>::max();
        total *= field.p();
    }
    return total;
}

NormalizedPolys::NormalizedPolys(PrimeField field, unsigned m, unsigned d, std::uint64_t guard)
    : field_(field), m_(m), d_(d)
{
    if (d == 0)
        throw std::invalid_argument("enumerate_normalized: degree must be at least 1");
    if (m == 0)
        throw std::invalid_argument("enumerate_normalized: m must be at least 1");
    const std::uint64_t candidates = enumeration_candidates(field, m, d);
    if (candidates > guard)
        throw InfeasibleError("brute force over F_" + std::to_string(field.p()) + " with m=" +
                              std::to_string(m) + ", d=" + std::to_string(d) + " needs " +
                              std::to_string(candidates) + " candidates (guard " +
                              std::to_string(guard) + ")");
}

NormalizedPolys::iterator::iterator(const NormalizedPolys& owner)
    : current_(DensePoly(owner.field_, owner.m_, owner.d_))
{
    const auto& basis = current_->basis();
    lead_begin_ = basis.degree_begin(owner.d_);
    lead_size_ = basis.size() - lead_begin_;
    pivot_ = 0;
    place_pivot();
}

void NormalizedPolys::iterator::place_pivot() { current_->set_coefficient_at(lead_begin_ + pivot_, 1); }

NormalizedPolys::iterator& NormalizedPolys::iterator::operator++()
{
    if (!current_)
        return *this;
    // Odometer over the free coefficients: everything of lower degree, and
    // the leading-form coefficients after the pivot.
    DensePoly& f = *current_;
    const unsigned p = f.field().p();
    const std::size_t n = lead_begin_ + lead_size_;
    for (std::size_t i = 0; i < n; ++i) {
        if (i >= lead_begin_ && i <= lead_begin_ + pivot_)
            continue;
        const unsigned c = f.coefficients()[i] + 1u;
        if (c < p) {
            f.set_coefficient_at(i, c);
            return *this;
        }
        f.set_coefficient_at(i, 0);
    }
    f.set_coefficient_at(lead_begin_ + pivot_, 0);
    if (++pivot_ == lead_size_) {
        current_.reset();
        return *this;
    }
    place_pivot();
    return *this;
}

// -- Brute-force counts ---------------------------------------------------------

struct BruteForceOracle::Degree {
    std::vector<DensePoly> normalized;
    std::vector<DensePoly> irreducible;
    std::unordered_set<std::string> reducible;
    OracleCounts counts;

    std::vector<BigCount> multisets; // per k
    std::vector<BigCount> distinct;  // per k
    std::optional<FactorizationCollision> collision;
    bool covers_reducible = true;
};

BruteForceOracle::BruteForceOracle(PrimeField field, unsigned m, std::uint64_t guard)
    : field_(field), m_(m), guard_(guard)
{
    if (m == 0)
        throw std::invalid_argument("BruteForceOracle: m must be at least 1");
}

BruteForceOracle::~BruteForceOracle() = default;
BruteForceOracle::BruteForceOracle(BruteForceOracle&&) noexcept = default;
BruteForceOracle& BruteForceOracle::operator=(BruteForceOracle&&) noexcept = default;

namespace {

struct Item {
    const DensePoly* poly;
    unsigned degree;
    std::size_t id;
};

/* Walks every multiset of irreducibles (items sorted by degree) whose
 * degrees sum to d, multiplying as it descends.
 */
class MultisetWalker {
public:
    MultisetWalker(std::span<const Item> items, unsigned d) : items_(items), d_(d)
    {
        multisets_.assign(d, 0);
        distinct_.resize(d);
    }

    void run()
    {
        std::vector<std::size_t> chosen;
        descend(0, d_, nullptr, chosen);
    }

    std::vector<BigCount> multiset_counts() const
    {
        std::vector<BigCount> out;
        for (auto v : multisets_)
            out.emplace_back(v);
        return out;
    }
    std::vector<BigCount> distinct_counts() const
    {
        std::vector<BigCount> out;
        for (const auto& s : distinct_)
            out.emplace_back(s.size());
        return out;
    }

    std::vector<std::unordered_set<std::string>> distinct_;
    std::optional<std::pair<std::vector<std::size_t>, std::vector<std::size_t>>> collision_;
    std::string collision_key_;

private:
    void descend(std::size_t start, unsigned remaining, const DensePoly* partial,
                 std::vector<std::size_t>& chosen)
    {
        for (std::size_t i = start; i < items_.size(); ++i) {
            const Item& it = items_[i];
            if (it.degree > remaining)
                break;
            chosen.push_back(i);
            DensePoly product = partial ? poly_multiply(*partial, *it.poly) : *it.poly;
            if (it.degree == remaining)
                record(product, chosen);
            else
                descend(i, remaining - it.degree, &product, chosen);
            chosen.pop_back();
        }
    }

    void record(const DensePoly& product, const std::vector<std::size_t>& chosen)
    {
        const std::size_t k = chosen.size();
        ++multisets_[k - 1];
        std::string key = key_of(product);
        distinct_[k - 1].insert(key);
        auto [pos, inserted] = owner_.try_emplace(std::move(key), chosen);
        if (!inserted && !collision_) {
            collision_.emplace(pos->second, chosen);
            collision_key_ = pos->first;
        }
    }

    std::span<const Item> items_;
    unsigned d_;
    std::vector<std::uint64_t> multisets_;
    std::unordered_map<std::string, std::vector<std::size_t>> owner_;
};

} // namespace

BruteForceOracle::Degree& BruteForceOracle::ensure(unsigned d)
{
    if (d == 0)
        throw std::invalid_argument("BruteForceOracle: degree must be at least 1");
    // Guard first so nothing is computed for an infeasible request.
    for (unsigned e = static_cast<unsigned>(degrees_.size()) + 1; e <= d; ++e)
        NormalizedPolys(field_, m_, e, guard_);

    while (degrees_.size() < d) {
        const unsigned e = static_cast<unsigned>(degrees_.size()) + 1;
        auto deg = std::make_unique<Degree>();

        for (const auto& f : NormalizedPolys(field_, m_, e, guard_))
            deg->normalized.push_back(f);

        // Every reducible f has a factor of degree a <= e/2; both cofactor
        // degrees are below e, so their lists are already built.
        for (unsigned a = 1; a <= e / 2; ++a) {
            for (const auto& g : degrees_[a - 1]->normalized) {
                for (const auto& h : degrees_[e - a - 1]->normalized) {
                    DensePoly gh = poly_multiply(g, h);
                    if (gh.total_degree() != static_cast<int>(e) || !gh.is_normalized())
                        throw ArithmeticError("oracle: product of normalized polynomials is "
                                              "not normalized of the summed degree");
                    deg->reducible.insert(key_of(gh));
                }
            }
        }

        for (const auto& f : deg->normalized)
            if (!deg->reducible.contains(key_of(f)))
                deg->irreducible.push_back(f);

        degrees_.push_back(std::move(deg));
        Degree& cur = *degrees_.back();

        // Multisets of irreducibles of degree <= e with degree sum e.
        std::vector<Item> items;
        for (unsigned t = 1; t <= e; ++t)
            for (const auto& g : degrees_[t - 1]->irreducible)
                items.push_back({&g, t, items.size()});
        MultisetWalker walker(items, e);
        walker.run();

        cur.multisets = walker.multiset_counts();
        cur.distinct = walker.distinct_counts();
        if (walker.collision_) {
            auto describe = [&](const std::vector<std::size_t>& ids) {
                std::vector<std::string> out;
                for (auto i : ids)
                    out.push_back(items[i].poly->to_string());
                return out;
            };
            FactorizationCollision c;
            c.first = describe(walker.collision_->first);
            c.second = describe(walker.collision_->second);
            c.product = walker.collision_key_;
            cur.collision = std::move(c);
        }

        std::size_t products_k2 = 0;
        std::unordered_set<std::string> seen;
        for (unsigned k = 2; k <= e; ++k)
            for (const auto& key : walker.distinct_[k - 1]) {
                if (!cur.reducible.contains(key))
                    cur.covers_reducible = false;
                if (seen.insert(key).second)
                    ++products_k2;
            }
        if (products_k2 != cur.reducible.size())
            cur.covers_reducible = false;

        cur.counts.d = e;
        cur.counts.normalized = BigCount(cur.normalized.size());
        cur.counts.reducible = BigCount(cur.reducible.size());
        cur.counts.irreducible = BigCount(cur.irreducible.size());
        cur.counts.by_factors = cur.distinct;
    }
    return *degrees_[d - 1];
}

const OracleCounts& BruteForceOracle::counts(unsigned d) { return ensure(d).counts; }

std::span<const DensePoly> BruteForceOracle::normalized(unsigned d) { return ensure(d).normalized; }

std::span<const DensePoly> BruteForceOracle::irreducibles(unsigned d)
{
    return ensure(d).irreducible;
}

FactorizationReport BruteForceOracle::verify_unique_factorization(unsigned d,
                                                                  const CountTable& expected)
{
    if (expected.params().q() != field_.p() || expected.params().m() != m_)
        throw std::invalid_argument("verify_unique_factorization: table params differ from "
                                    "the oracle's field and variable count");
    const CountRow& row = expected.row(d);
    Degree& deg = ensure(d);

    FactorizationReport report;
    report.d = d;
    report.multisets = deg.multisets;
    report.distinct = deg.distinct;
    report.expected = row.by_factors;
    report.collision = deg.collision;
    report.unique = !deg.collision.has_value() && deg.multisets == deg.distinct;
    report.matches_counting = deg.distinct == row.by_factors;
    report.covers_reducible = deg.covers_reducible;
    return report;
}

OracleCounts brute_force_counts(PrimeField field, unsigned m, unsigned d, std::uint64_t guard)
{
    BruteForceOracle oracle(field, m, guard);
    return oracle.counts(d);
}

FactorizationReport verify_unique_factorization(PrimeField field, unsigned m, unsigned d,
                                                std::uint64_t guard)
{
    BruteForceOracle oracle(field, m, guard);
    CountTable table(CountingParams(field.p(), m));
    table.extend_to(d);
    return oracle.verify_unique_factorization(d, table);
}

} // namespace polycount
