#include "heisidem/grp.hpp"

#include <algorithm>
#include <deque>
#include <numeric>
#include <sstream>
#include <stdexcept>

namespace heisidem::grp {

namespace {

std::string fmt_elems(std::initializer_list<std::size_t> xs) {
    std::ostringstream os;
    os << "(";
    bool first = true;
    for (auto x : xs) {
        if (!first) os << ", ";
        first = false;
        os << x;
    }
    os << ")";
    return os.str();
}

/// Elements reachable as left-normed products of `gens`.
std::vector<char> closure(std::size_t n, std::span<const Element> mul, std::span<const Element> gens) {
    std::vector<char> seen(n, 0);
    std::deque<Element> queue;
    for (auto g : gens) {
        if (!seen[g]) {
            seen[g] = 1;
            queue.push_back(g);
        }
    }
    while (!queue.empty()) {
        Element x = queue.front();
        queue.pop_front();
        for (auto g : gens) {
            Element y = mul[static_cast<std::size_t>(x) * n + g];
            if (!seen[y]) {
                seen[y] = 1;
                queue.push_back(y);
            }
        }
    }
    return seen;
}

std::vector<Element> greedy_generators(std::size_t n, std::span<const Element> mul) {
    std::vector<Element> gens;
    std::vector<char> seen(n, 0);
    for (Element x = 0; x < n; ++x) {
        if (seen[x]) continue;
        gens.push_back(x);
        seen = closure(n, mul, gens);
    }
    return gens;
}

}  // namespace

// ---------------------------------------------------------------- TableGroup

GroupPtr TableGroup::from_table(const std::vector<std::vector<Element>>& mul,
                                std::vector<std::string> labels,
                                DesignatedMap designated,
                                TableOptions options) {
    const std::size_t n = mul.size();
    if (n == 0) throw std::invalid_argument("group table is empty");
    std::shared_ptr<TableGroup> g(new TableGroup());
    g->order_ = n;
    g->mul_.resize(n * n);
    for (std::size_t a = 0; a < n; ++a) {
        if (mul[a].size() != n) throw std::invalid_argument("group table row " + std::to_string(a) + " has wrong length");
        for (std::size_t b = 0; b < n; ++b) {
            if (mul[a][b] >= n)
                throw std::invalid_argument("group table entry out of range at " + fmt_elems({a, b}));
            g->mul_[a * n + b] = mul[a][b];
        }
    }
    // Latin square: every row and column a permutation
    std::vector<char> hit(n);
    for (std::size_t a = 0; a < n; ++a) {
        std::fill(hit.begin(), hit.end(), 0);
        for (std::size_t b = 0; b < n; ++b) {
            if (hit[g->mul_[a * n + b]]++) throw std::invalid_argument("row " + std::to_string(a) + " is not a permutation");
        }
        std::fill(hit.begin(), hit.end(), 0);
        for (std::size_t b = 0; b < n; ++b) {
            if (hit[g->mul_[b * n + a]]++)
                throw std::invalid_argument("column " + std::to_string(a) + " is not a permutation");
        }
    }
    std::optional<Element> id;
    for (Element e = 0; e < n && !id; ++e) {
        bool ok = true;
        for (std::size_t x = 0; x < n && ok; ++x) ok = g->mul_[e * n + x] == x && g->mul_[x * n + e] == x;
        if (ok) id = e;
    }
    if (!id) throw std::invalid_argument("group table has no two-sided identity");
    g->id_ = *id;
    g->inv_.resize(n);
    for (std::size_t a = 0; a < n; ++a) {
        std::optional<Element> inv;
        for (Element b = 0; b < n; ++b) {
            if (g->mul_[a * n + b] == *id) {
                inv = b;
                break;
            }
        }
        if (!inv || g->mul_[*inv * n + a] != *id)
            throw std::invalid_argument("element " + std::to_string(a) + " has no two-sided inverse");
        g->inv_[a] = *inv;
    }
    if (n <= kAlwaysCheckAssociativity || !options.skip_assoc_check) {
        if (auto w = associativity_witness(n, g->mul_))
            throw std::invalid_argument("table is not associative at " + fmt_elems({(*w)[0], (*w)[1], (*w)[2]}));
        g->assoc_checked_ = true;
    }
    if (labels.empty()) {
        labels.reserve(n);
        for (std::size_t i = 0; i < n; ++i) labels.push_back(std::to_string(i));
    }
    if (labels.size() != n) throw std::invalid_argument("label count does not match group order");
    g->labels_ = std::move(labels);
    for (auto& [name, members] : designated) {
        for (auto m : members)
            if (m >= n) throw std::invalid_argument("designated subgroup '" + name + "' has an out-of-range member");
        std::sort(members.begin(), members.end());
    }
    g->designated_ = std::move(designated);
    return g;
}

Element TableGroup::power(Element a, std::int64_t k) const {
    if (k < 0) {
        a = inv(a);
        k = -k;
    }
    Element r = id_;
    Element base = a;
    while (k > 0) {
        if (k & 1) r = mul(r, base);
        base = mul(base, base);
        k >>= 1;
    }
    return r;
}

std::size_t TableGroup::element_order(Element a) const {
    std::size_t k = 1;
    Element x = a;
    while (x != id_) {
        x = mul(x, a);
        ++k;
    }
    return k;
}

bool TableGroup::is_abelian() const {
    for (std::size_t a = 0; a < order_; ++a)
        for (std::size_t b = a + 1; b < order_; ++b)
            if (mul_[a * order_ + b] != mul_[b * order_ + a]) return false;
    return true;
}

std::optional<Element> TableGroup::find_label(std::string_view label) const {
    for (std::size_t i = 0; i < labels_.size(); ++i)
        if (labels_[i] == label) return static_cast<Element>(i);
    return std::nullopt;
}

std::optional<std::array<Element, 3>> associativity_witness(std::size_t n, std::span<const Element> mul) {
    // Light's test: the elements a with (x a) y = x (a y) for all x, y form a
    // sub-magma, so checking a generating set decides associativity.
    const auto gens = greedy_generators(n, mul);
    for (auto a : gens) {
        for (std::size_t x = 0; x < n; ++x) {
            const Element xa = mul[x * n + a];
            for (std::size_t y = 0; y < n; ++y) {
                const Element lhs = mul[static_cast<std::size_t>(xa) * n + y];
                const Element rhs = mul[x * n + mul[static_cast<std::size_t>(a) * n + y]];
                if (lhs != rhs) return std::array<Element, 3>{static_cast<Element>(x), a, static_cast<Element>(y)};
            }
        }
    }
    return std::nullopt;
}

std::optional<std::array<Element, 3>> associativity_witness_bruteforce(const TableGroup& g) {
    const auto n = static_cast<Element>(g.order());
    for (Element a = 0; a < n; ++a)
        for (Element b = 0; b < n; ++b) {
            const Element ab = g.mul(a, b);
            for (Element c = 0; c < n; ++c)
                if (g.mul(ab, c) != g.mul(a, g.mul(b, c))) return std::array<Element, 3>{a, b, c};
        }
    return std::nullopt;
}

std::vector<Element> generating_set(const TableGroup& g) {
    std::vector<Element> flat(g.order() * g.order());
    for (Element a = 0; a < g.order(); ++a)
        for (Element b = 0; b < g.order(); ++b) flat[a * g.order() + b] = g.mul(a, b);
    return greedy_generators(g.order(), flat);
}

Element commutator(const TableGroup& G, Element g, Element h) {
    return G.mul(G.mul(h, g), G.mul(G.inv(h), G.inv(g)));
}

// ---------------------------------------------------------------- SubgroupRef

SubgroupRef SubgroupRef::from_members(GroupPtr parent, std::vector<Element> members) {
    if (!parent) throw std::invalid_argument("subgroup without parent group");
    const auto& G = *parent;
    std::sort(members.begin(), members.end());
    members.erase(std::unique(members.begin(), members.end()), members.end());
    SubgroupRef s;
    s.position_.assign(G.order(), -1);
    for (std::size_t i = 0; i < members.size(); ++i) {
        if (members[i] >= G.order()) throw std::invalid_argument("subgroup member out of range");
        s.position_[members[i]] = static_cast<std::int32_t>(i);
    }
    if (s.position_[G.id()] < 0) throw std::invalid_argument("subgroup does not contain the identity");
    for (auto a : members) {
        if (s.position_[G.inv(a)] < 0)
            throw std::invalid_argument("subgroup not closed under inversion at " + G.label(a));
        for (auto b : members)
            if (s.position_[G.mul(a, b)] < 0)
                throw std::invalid_argument("subgroup not closed under multiplication at (" + G.label(a) + ", " +
                                            G.label(b) + ")");
    }
    s.parent_ = std::move(parent);
    s.members_ = std::move(members);
    return s;
}

SubgroupRef SubgroupRef::generated(GroupPtr parent, std::span<const Element> generators) {
    const auto& G = *parent;
    std::vector<char> seen(G.order(), 0);
    std::deque<Element> queue{G.id()};
    seen[G.id()] = 1;
    while (!queue.empty()) {
        Element x = queue.front();
        queue.pop_front();
        for (auto g : generators) {
            if (g >= G.order()) throw std::invalid_argument("generator out of range");
            Element y = G.mul(x, g);
            if (!seen[y]) {
                seen[y] = 1;
                queue.push_back(y);
            }
        }
    }
    std::vector<Element> members;
    for (Element x = 0; x < G.order(); ++x)
        if (seen[x]) members.push_back(x);
    return from_members(std::move(parent), std::move(members));
}

SubgroupRef SubgroupRef::whole(GroupPtr parent) {
    std::vector<Element> all(parent->order());
    std::iota(all.begin(), all.end(), Element{0});
    return from_members(std::move(parent), std::move(all));
}

SubgroupRef SubgroupRef::trivial(GroupPtr parent) {
    const Element id = parent->id();
    return from_members(std::move(parent), {id});
}

SubgroupRef SubgroupRef::designated(GroupPtr parent, const std::string& name) {
    auto it = parent->designated().find(name);
    if (it == parent->designated().end()) throw std::invalid_argument("no designated subgroup named '" + name + "'");
    return from_members(parent, it->second);
}

bool SubgroupRef::is_subset_of(const SubgroupRef& other) const {
    if (other.parent_ != parent_) return false;
    return std::all_of(members_.begin(), members_.end(), [&](Element m) { return other.contains(m); });
}

std::optional<std::pair<Element, Element>> SubgroupRef::normality_witness(const SubgroupRef& ambient) const {
    const auto& G = *parent_;
    for (auto g : ambient.members())
        for (auto n : members_)
            if (!contains(G.conj(g, n))) return std::pair{g, n};
    return std::nullopt;
}

bool SubgroupRef::is_abelian() const {
    const auto& G = *parent_;
    for (auto a : members_)
        for (auto b : members_)
            if (G.mul(a, b) != G.mul(b, a)) return false;
    return true;
}

// ---------------------------------------------------------------- characters

bool MultChar::is_trivial() const {
    return std::all_of(values.begin(), values.end(), [](const QmodZ& q) { return q.is_zero(); });
}

std::int64_t MultChar::order() const {
    std::int64_t l = 1;
    for (const auto& v : values) l = exactnum::lcm64(l, v.order());
    return l;
}

std::optional<std::pair<Element, Element>> multiplicativity_witness(const SubgroupRef& domain, const MultChar& chi) {
    const auto& G = domain.group();
    if (chi.values.size() != domain.size()) return std::pair{G.id(), G.id()};
    for (auto a : domain.members())
        for (auto b : domain.members())
            if (chi[domain.local_index(G.mul(a, b))] != chi[domain.local_index(a)] + chi[domain.local_index(b)])
                return std::pair{a, b};
    return std::nullopt;
}

MultChar character_from_generators(const SubgroupRef& domain,
                                   std::span<const Element> generators,
                                   std::span<const QmodZ> exponents) {
    const auto& G = domain.group();
    if (generators.size() != exponents.size())
        throw std::invalid_argument("character: generator and exponent counts differ");
    for (auto g : generators)
        if (g >= G.order() || !domain.contains(g))
            throw std::invalid_argument("character: generator outside the domain subgroup");
    std::vector<std::optional<QmodZ>> value(domain.size());
    value[domain.local_index(G.id())] = QmodZ();
    std::deque<Element> queue{G.id()};
    while (!queue.empty()) {
        Element x = queue.front();
        queue.pop_front();
        const QmodZ vx = *value[domain.local_index(x)];
        for (std::size_t i = 0; i < generators.size(); ++i) {
            const Element y = G.mul(x, generators[i]);
            const QmodZ vy = vx + exponents[i];
            auto& slot = value[domain.local_index(y)];
            if (!slot) {
                slot = vy;
                queue.push_back(y);
            } else if (*slot != vy) {
                throw std::invalid_argument("character exponents are inconsistent at element " + G.label(y));
            }
        }
    }
    MultChar chi;
    chi.values.reserve(domain.size());
    for (std::size_t i = 0; i < value.size(); ++i) {
        if (!value[i])
            throw std::invalid_argument("character generators do not generate the subgroup (missing " +
                                        G.label(domain.members()[i]) + ")");
        chi.values.push_back(*value[i]);
    }
    return chi;
}

// ---------------------------------------------------------------- abelian quotients

CyclicDecomposition decompose_abelian(std::size_t n, std::span<const std::size_t> law, std::size_t identity) {
    auto mul = [&](std::size_t a, std::size_t b) { return law[a * n + b]; };
    std::vector<std::int64_t> elem_order(n);
    for (std::size_t a = 0; a < n; ++a) {
        std::int64_t k = 1;
        std::size_t x = a;
        while (x != identity) {
            x = mul(x, a);
            ++k;
        }
        elem_order[a] = k;
    }
    std::vector<char> in_sub(n, 0);
    in_sub[identity] = 1;
    std::size_t sub_size = 1;
    CyclicDecomposition out;
    while (sub_size < n) {
        // order of each element modulo the current subgroup
        std::int64_t best = 0;
        std::vector<std::int64_t> coset_order(n);
        for (std::size_t a = 0; a < n; ++a) {
            std::int64_t k = 1;
            std::size_t x = a;
            while (!in_sub[x]) {
                x = mul(x, a);
                ++k;
            }
            coset_order[a] = k;
            best = std::max(best, k);
        }
        std::optional<std::size_t> pick;
        for (std::size_t a = 0; a < n && !pick; ++a)
            if (coset_order[a] == best && elem_order[a] == best) pick = a;
        if (!pick) throw std::logic_error("abelian decomposition: no lift of maximal order");
        out.factors.push_back(best);
        out.generators.push_back(*pick);
        // subgroup <- subgroup * <pick>
        std::vector<std::size_t> old;
        for (std::size_t a = 0; a < n; ++a)
            if (in_sub[a]) old.push_back(a);
        std::size_t p = *pick;
        for (std::int64_t k = 1; k < best; ++k) {
            for (auto s : old) in_sub[mul(s, p)] = 1;
            p = mul(p, *pick);
        }
        sub_size = static_cast<std::size_t>(std::count(in_sub.begin(), in_sub.end(), 1));
    }
    std::reverse(out.factors.begin(), out.factors.end());
    std::reverse(out.generators.begin(), out.generators.end());
    return out;
}

QuotientPtr AbelianQuotient::make(const SubgroupRef& H, const SubgroupRef& N) {
    if (H.parent() != N.parent()) throw std::invalid_argument("quotient: subgroups of different groups");
    const auto& G = H.group();
    if (!N.is_subset_of(H)) throw std::invalid_argument("quotient: N is not contained in H");
    if (auto w = N.normality_witness(H))
        throw std::invalid_argument("quotient: N is not normal in H (h = " + G.label(w->first) +
                                    ", n = " + G.label(w->second) + ")");
    for (auto a : H.members())
        for (auto b : H.members())
            if (!N.contains(commutator(G, a, b)))
                throw std::invalid_argument("quotient: H/N is not commutative (" + G.label(a) + ", " + G.label(b) + ")");

    std::shared_ptr<AbelianQuotient> q(new AbelianQuotient(H, N));
    q->coset_of_.assign(G.order(), -1);
    for (auto h : H.members()) {
        if (q->coset_of_[h] >= 0) continue;
        const auto idx = static_cast<std::int32_t>(q->reps_.size());
        q->reps_.push_back(h);
        for (auto n : N.members()) q->coset_of_[G.mul(h, n)] = idx;
    }
    const std::size_t m = q->reps_.size();
    q->law_.resize(m * m);
    q->inv_.resize(m);
    for (std::size_t a = 0; a < m; ++a) {
        for (std::size_t b = 0; b < m; ++b)
            q->law_[a * m + b] = static_cast<std::size_t>(q->coset_of_[G.mul(q->reps_[a], q->reps_[b])]);
        q->inv_[a] = static_cast<std::size_t>(q->coset_of_[G.inv(q->reps_[a])]);
    }
    auto dec = decompose_abelian(m, q->law_, 0);
    q->factors_ = dec.factors;
    q->gens_ = dec.generators;
    q->coords_.assign(m, {});
    std::vector<std::int64_t> c(q->factors_.size(), 0);
    for (std::size_t count = 0; count < m; ++count) {
        std::size_t x = 0;
        for (std::size_t i = 0; i < c.size(); ++i)
            for (std::int64_t k = 0; k < c[i]; ++k) x = q->mul(x, q->gens_[i]);
        if (!q->coords_[x].empty() || (c.empty() && count > 0))
            throw std::logic_error("abelian decomposition is not a direct product");
        q->coords_[x] = c;
        for (std::size_t i = c.size(); i-- > 0;) {
            if (++c[i] < q->factors_[i]) break;
            c[i] = 0;
        }
    }
    return q;
}

std::optional<std::size_t> AbelianQuotient::coset_of(Element g) const {
    if (g >= coset_of_.size() || coset_of_[g] < 0) return std::nullopt;
    return static_cast<std::size_t>(coset_of_[g]);
}

std::size_t AbelianQuotient::from_coords(std::span<const std::int64_t> c) const {
    if (c.size() != factors_.size()) throw std::invalid_argument("coordinate vector has wrong length");
    std::size_t x = 0;
    for (std::size_t i = 0; i < c.size(); ++i) {
        std::int64_t k = c[i] % factors_[i];
        if (k < 0) k += factors_[i];
        for (std::int64_t j = 0; j < k; ++j) x = mul(x, gens_[i]);
    }
    return x;
}

std::vector<MultChar> characters(const AbelianQuotient& A) {
    const auto& d = A.invariant_factors();
    std::vector<MultChar> out;
    out.reserve(A.size());
    std::vector<std::int64_t> t(d.size(), 0);
    for (std::size_t count = 0; count < A.size(); ++count) {
        MultChar chi;
        chi.values.reserve(A.size());
        for (std::size_t a = 0; a < A.size(); ++a) {
            QmodZ v;
            const auto& c = A.coords(a);
            for (std::size_t i = 0; i < d.size(); ++i) v += QmodZ(t[i] * c[i], d[i]);
            chi.values.push_back(v);
        }
        out.push_back(std::move(chi));
        for (std::size_t i = t.size(); i-- > 0;) {
            if (++t[i] < d[i]) break;
            t[i] = 0;
        }
    }
    return out;
}

GroupQuotient quotient_group(const SubgroupRef& H) {
    const auto& G = H.group();
    if (auto w = H.normality_witness(SubgroupRef::whole(H.parent())))
        throw std::invalid_argument("quotient: H is not normal in G (g = " + G.label(w->first) +
                                    ", h = " + G.label(w->second) + ")");
    GroupQuotient q;
    constexpr std::size_t unset = static_cast<std::size_t>(-1);
    q.coset_of.assign(G.order(), unset);
    // the identity goes first so that coset 0 is H itself
    std::vector<Element> order(G.order());
    std::iota(order.begin(), order.end(), Element{0});
    std::rotate(order.begin(), order.begin() + G.id(), order.begin() + G.id() + 1);
    for (Element g : order) {
        if (q.coset_of[g] != unset) continue;
        const std::size_t idx = q.section.size();
        q.section.push_back(g);
        for (auto h : H.members()) q.coset_of[G.mul(h, g)] = idx;
    }
    const std::size_t m = q.section.size();
    std::vector<std::vector<Element>> table(m, std::vector<Element>(m));
    std::vector<std::string> labels;
    for (std::size_t a = 0; a < m; ++a) {
        labels.push_back("H" + G.label(q.section[a]));
        for (std::size_t b = 0; b < m; ++b)
            table[a][b] = static_cast<Element>(q.coset_of[G.mul(q.section[a], q.section[b])]);
    }
    q.group = TableGroup::from_table(table, std::move(labels));
    return q;
}

// ---------------------------------------------------------------- constructors

bool is_prime_power(std::int64_t n) {
    if (n < 2) return false;
    std::int64_t p = 2;
    while (p * p <= n && n % p != 0) ++p;
    if (n % p != 0) return true;  // n is prime
    while (n % p == 0) n /= p;
    return n == 1;
}

GroupPtr heisenberg(std::int64_t m) {
    if (!is_prime_power(m)) throw std::invalid_argument("heisenberg: modulus " + std::to_string(m) + " is not a prime power");
    if (m * m * m > 100000) throw std::invalid_argument("heisenberg: group order exceeds the table cap");
    const auto M = static_cast<std::size_t>(m);
    const std::size_t n = M * M * M;
    auto idx = [&](std::size_t x, std::size_t y, std::size_t z) { return static_cast<Element>((x * M + y) * M + z); };
    std::vector<std::vector<Element>> table(n, std::vector<Element>(n));
    std::vector<std::string> labels(n);
    DesignatedMap designated;
    for (std::size_t a = 0; a < n; ++a) {
        const std::size_t x = a / (M * M), y = (a / M) % M, z = a % M;
        labels[a] = "(" + std::to_string(x) + "," + std::to_string(y) + "," + std::to_string(z) + ")";
        if (x == 0 && y == 0) designated["center"].push_back(static_cast<Element>(a));
        for (std::size_t b = 0; b < n; ++b) {
            const std::size_t x2 = b / (M * M), y2 = (b / M) % M, z2 = b % M;
            table[a][b] = idx((x + x2) % M, (y + y2) % M, (z + z2 + x * y2) % M);
        }
    }
    return TableGroup::from_table(table, std::move(labels), std::move(designated));
}

GroupPtr cyclic(std::int64_t n) {
    if (n < 1) throw std::invalid_argument("cyclic: order must be positive");
    const auto N = static_cast<std::size_t>(n);
    std::vector<std::vector<Element>> table(N, std::vector<Element>(N));
    std::vector<std::string> labels(N);
    for (std::size_t a = 0; a < N; ++a) {
        labels[a] = std::to_string(a);
        for (std::size_t b = 0; b < N; ++b) table[a][b] = static_cast<Element>((a + b) % N);
    }
    return TableGroup::from_table(table, std::move(labels));
}

GroupPtr direct_product(const GroupPtr& A, const GroupPtr& B, TableOptions options) {
    const std::size_t na = A->order(), nb = B->order();
    const std::size_t n = na * nb;
    std::vector<std::vector<Element>> table(n, std::vector<Element>(n));
    std::vector<std::string> labels(n);
    for (std::size_t a = 0; a < n; ++a) {
        const auto a1 = static_cast<Element>(a / nb), a2 = static_cast<Element>(a % nb);
        labels[a] = "[" + A->label(a1) + "," + B->label(a2) + "]";
        for (std::size_t b = 0; b < n; ++b) {
            const auto b1 = static_cast<Element>(b / nb), b2 = static_cast<Element>(b % nb);
            table[a][b] = static_cast<Element>(A->mul(a1, b1) * nb + B->mul(a2, b2));
        }
    }
    DesignatedMap designated;
    for (Element a = 0; a < na; ++a) designated["left"].push_back(static_cast<Element>(a * nb + B->id()));
    for (Element b = 0; b < nb; ++b) designated["right"].push_back(static_cast<Element>(A->id() * nb + b));
    for (const auto& [name, members] : A->designated())
        for (auto m : members) designated["left." + name].push_back(static_cast<Element>(m * nb + B->id()));
    for (const auto& [name, members] : B->designated())
        for (auto m : members) designated["right." + name].push_back(static_cast<Element>(A->id() * nb + m));
    return TableGroup::from_table(table, std::move(labels), std::move(designated), options);
}

namespace {

void check_automorphism(const TableGroup& base, const std::vector<Element>& perm, std::size_t which) {
    const std::size_t n = base.order();
    if (perm.size() != n) throw std::invalid_argument("automorphism " + std::to_string(which) + " has wrong length");
    std::vector<char> hit(n, 0);
    for (auto p : perm) {
        if (p >= n || hit[p]++) throw std::invalid_argument("automorphism " + std::to_string(which) + " is not a permutation");
    }
    for (Element a = 0; a < n; ++a)
        for (Element b = 0; b < n; ++b)
            if (perm[base.mul(a, b)] != base.mul(perm[a], perm[b]))
                throw std::invalid_argument("map " + std::to_string(which) + " is not an automorphism at (" +
                                            base.label(a) + ", " + base.label(b) + ")");
}

std::vector<Element> compose(const std::vector<Element>& f, const std::vector<Element>& g) {
    std::vector<Element> r(g.size());
    for (std::size_t i = 0; i < g.size(); ++i) r[i] = f[g[i]];
    return r;
}

}  // namespace

GroupPtr semidirect(const GroupPtr& base, const std::vector<std::vector<Element>>& automorphisms, TableOptions options) {
    const std::size_t nb = base->order();
    if (automorphisms.empty()) throw std::invalid_argument("semidirect: empty automorphism list");
    for (std::size_t i = 0; i < automorphisms.size(); ++i) check_automorphism(*base, automorphisms[i], i);
    std::vector<Element> identity(nb);
    std::iota(identity.begin(), identity.end(), Element{0});
    std::vector<std::vector<Element>> gamma;
    gamma.push_back(identity);
    bool has_identity = false;
    for (const auto& a : automorphisms) {
        if (a == identity)
            has_identity = true;
        else
            gamma.push_back(a);
    }
    if (!has_identity) throw std::invalid_argument("semidirect: automorphism list lacks the identity");
    std::map<std::vector<Element>, std::size_t> index;
    for (std::size_t i = 0; i < gamma.size(); ++i) {
        if (!index.emplace(gamma[i], i).second) throw std::invalid_argument("semidirect: repeated automorphism");
    }
    const std::size_t ng = gamma.size();
    std::vector<std::size_t> comp(ng * ng);
    for (std::size_t i = 0; i < ng; ++i)
        for (std::size_t j = 0; j < ng; ++j) {
            auto it = index.find(compose(gamma[i], gamma[j]));
            if (it == index.end())
                throw std::invalid_argument("semidirect: automorphisms " + std::to_string(i) + " and " +
                                            std::to_string(j) + " do not close under composition");
            comp[i * ng + j] = it->second;
        }
    const std::size_t n = nb * ng;
    if (n > 100000) throw std::invalid_argument("semidirect: group order exceeds the table cap");
    std::vector<std::vector<Element>> table(n, std::vector<Element>(n));
    std::vector<std::string> labels(n);
    for (std::size_t a = 0; a < n; ++a) {
        const std::size_t i = a / nb;
        const auto b1 = static_cast<Element>(a % nb);
        labels[a] = i == 0 ? base->label(b1) : base->label(b1) + "s" + std::to_string(i);
        for (std::size_t b = 0; b < n; ++b) {
            const std::size_t j = b / nb;
            const auto b2 = static_cast<Element>(b % nb);
            table[a][b] = static_cast<Element>(comp[i * ng + j] * nb + base->mul(b1, gamma[i][b2]));
        }
    }
    DesignatedMap designated = base->designated();
    for (Element b = 0; b < nb; ++b) designated["base"].push_back(b);
    return TableGroup::from_table(table, std::move(labels), std::move(designated), options);
}

std::vector<std::vector<Element>> automorphism_closure(const TableGroup& base,
                                                        const std::vector<std::vector<Element>>& generators) {
    std::vector<Element> identity(base.order());
    std::iota(identity.begin(), identity.end(), Element{0});
    std::vector<std::vector<Element>> out{identity};
    std::map<std::vector<Element>, bool> seen{{identity, true}};
    for (std::size_t i = 0; i < generators.size(); ++i) check_automorphism(base, generators[i], i);
    for (std::size_t k = 0; k < out.size(); ++k) {
        for (const auto& g : generators) {
            auto c = compose(g, out[k]);
            if (seen.emplace(c, true).second) out.push_back(std::move(c));
        }
    }
    return out;
}

std::vector<Element> heisenberg_automorphism(std::int64_t m, std::string_view name) {
    const auto M = static_cast<std::int64_t>(m);
    const std::int64_t n = M * M * M;
    std::vector<Element> perm(static_cast<std::size_t>(n));
    auto mod = [&](std::int64_t v) { return ((v % M) + M) % M; };
    for (std::int64_t a = 0; a < n; ++a) {
        const std::int64_t x = a / (M * M), y = (a / M) % M, z = a % M;
        std::int64_t X = x, Y = y, Z = z;
        if (name == "negate_xy") {
            X = mod(-x);
            Y = mod(-y);
        } else if (name == "swap") {
            X = y;
            Y = x;
            Z = mod(x * y - z);
        } else if (name != "identity") {
            throw std::invalid_argument("unknown heisenberg automorphism '" + std::string(name) + "'");
        }
        perm[static_cast<std::size_t>(a)] = static_cast<Element>((X * M + Y) * M + Z);
    }
    return perm;
}

}  // namespace heisidem::grp
