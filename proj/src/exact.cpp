#include "cwcmatch/exact.hpp"

#include <absl/container/flat_hash_map.h>

#include <algorithm>
#include <bit>
#include <limits>
#include <numeric>
#include <string>
#include <stdexcept>

#include "cwcmatch/errors.hpp"
#include "cwcmatch/hyper.hpp"

namespace cwcmatch {

BitGraph::BitGraph(std::size_t vertices)
    : size_(vertices), row_words_((vertices + 63) / 64), rows_(size_ * row_words_, 0) {}

void BitGraph::add_edge(std::size_t u, std::size_t v) {
    if (u >= size_ || v >= size_ || u == v) throw std::invalid_argument("bad edge");
    rows_[u * row_words_ + v / 64] |= std::uint64_t{1} << (v % 64);
    rows_[v * row_words_ + u / 64] |= std::uint64_t{1} << (u % 64);
}

std::size_t BitGraph::degree(std::size_t v) const noexcept {
    std::size_t d = 0;
    for (const auto word : row(v)) d += static_cast<std::size_t>(std::popcount(word));
    return d;
}

std::uint64_t BitGraph::edge_count() const noexcept {
    std::uint64_t twice = 0;
    for (const auto word : rows_) twice += static_cast<std::uint64_t>(std::popcount(word));
    return twice / 2;
}

BitGraph BitGraph::induced(std::span<const std::size_t> keep) const {
    BitGraph out(keep.size());
    for (std::size_t i = 0; i < keep.size(); ++i)
        for (std::size_t j = i + 1; j < keep.size(); ++j)
            if (has_edge(keep[i], keep[j])) out.add_edge(i, j);
    return out;
}

CompatGraph build_compat_graph(const CodeSpec& spec, std::size_t vertex_cap) {
    const BigCount total = space_size(spec.space());
    if (total > vertex_cap)
        throw BudgetExceeded("word space has " + total.str() + " words, over the vertex cap of " +
                             std::to_string(vertex_cap));
    CompatGraph g{spec, enumerate_words(spec.space()), BitGraph(static_cast<std::size_t>(total))};

    const std::size_t v = g.vertices.size();
    const auto n = static_cast<std::size_t>(spec.n());
    std::vector<std::uint8_t> packed(v * n);
    for (std::size_t i = 0; i < v; ++i)
        std::copy(g.vertices[i].symbols().begin(), g.vertices[i].symbols().end(), packed.begin() + i * n);

    for (std::size_t i = 0; i < v; ++i) {
        const std::uint8_t* a = packed.data() + i * n;
        for (std::size_t j = i + 1; j < v; ++j) {
            const std::uint8_t* b = packed.data() + j * n;
            int dist = 0;
            for (std::size_t k = 0; k < n; ++k) dist += a[k] != b[k];
            if (dist >= spec.d()) g.graph.add_edge(i, j);
        }
    }
    return g;
}

std::string to_string(SearchStatus s) { return s == SearchStatus::exact ? "exact" : "timeout"; }

namespace {

/// Vertices in degeneracy order: repeatedly remove a vertex of minimum degree
/// (smallest id on ties), then reverse so the densest core comes first.
std::vector<std::size_t> degeneracy_order(const BitGraph& g) {
    const std::size_t v = g.size();
    std::vector<std::size_t> degree(v);
    for (std::size_t i = 0; i < v; ++i) degree[i] = g.degree(i);
    std::vector<char> removed(v, 0);
    std::vector<std::size_t> order;
    order.reserve(v);
    for (std::size_t step = 0; step < v; ++step) {
        std::size_t pick = v;
        for (std::size_t i = 0; i < v; ++i)
            if (!removed[i] && (pick == v || degree[i] < degree[pick])) pick = i;
        removed[pick] = 1;
        order.push_back(pick);
        const auto row = g.row(pick);
        for (std::size_t w = 0; w < row.size(); ++w) {
            for (std::uint64_t bits = row[w]; bits != 0; bits &= bits - 1) {
                const std::size_t u = w * 64 + static_cast<std::size_t>(std::countr_zero(bits));
                if (!removed[u]) --degree[u];
            }
        }
    }
    std::reverse(order.begin(), order.end());
    return order;
}

/// Families of independent sets given by membership lists. A clique meets
/// each set at most once; when every vertex lies in exactly m sets of a
/// family, a clique inside P has at most floor(#family sets meeting P / m)
/// vertices.
struct SetCover {
    std::vector<std::size_t> membership;              ///< per family
    std::vector<std::uint32_t> family_of;             ///< per set
    std::vector<std::vector<std::uint32_t>> sets_of;  ///< per vertex
};

/// Evaluates the packing bound of a SetCover on vertex subsets.
class PackingCounter {
public:
    explicit PackingCounter(const SetCover* cover) : cover_(cover) {
        if (cover_) {
            stamp_.assign(cover_->family_of.size(), 0);
            hits_.resize(cover_->membership.size());
        }
    }

    explicit operator bool() const noexcept { return cover_ != nullptr; }

    /// `each(f)` must call f(v) for every vertex v of the subset.
    template <class Each>
    std::size_t bound(Each&& each) {
        if (++epoch_ == 0) {
            std::fill(stamp_.begin(), stamp_.end(), 0);
            epoch_ = 1;
        }
        std::fill(hits_.begin(), hits_.end(), 0);
        each([&](std::size_t v) {
            for (const auto s : cover_->sets_of[v]) {
                if (stamp_[s] != epoch_) {
                    stamp_[s] = epoch_;
                    ++hits_[cover_->family_of[s]];
                }
            }
        });
        std::size_t best = std::numeric_limits<std::size_t>::max();
        for (std::size_t f = 0; f < hits_.size(); ++f)
            if (cover_->membership[f] != 0) best = std::min(best, hits_[f] / cover_->membership[f]);
        return best;
    }

private:
    const SetCover* cover_;
    std::vector<std::uint32_t> stamp_;
    std::uint32_t epoch_ = 0;
    std::vector<std::size_t> hits_;
};

class CliqueSearch {
public:
    using Clock = std::chrono::steady_clock;

    /// `floor` is a clique size already known elsewhere; only strictly larger
    /// cliques are reported.
    /// The search also stops once it holds a clique of size `stop_at`.
    CliqueSearch(const BitGraph& g, std::optional<Clock::time_point> deadline, std::size_t floor = 0,
                 const SetCover* cover = nullptr,
                 std::size_t stop_at = std::numeric_limits<std::size_t>::max())
        : g_(g), words_(g.row_words()), deadline_(deadline), floor_(floor), stop_at_(stop_at),
          packing_(cover) {}

    /// Runs the search from the full vertex set; returns the root colour count.
    std::size_t run() {
        std::vector<std::uint64_t> all(words_, 0);
        for (std::size_t i = 0; i < g_.size(); ++i) all[i / 64] |= std::uint64_t{1} << (i % 64);
        expand(all);
        return root_colors_;
    }

    const std::vector<std::size_t>& best() const noexcept { return best_; }
    bool timed_out() const noexcept { return timed_out_; }

private:
    std::size_t target() const noexcept { return std::max(best_.size(), floor_); }

    std::size_t packing_bound(const std::vector<std::uint64_t>& p) {
        return packing_.bound([&](auto&& visit) {
            for (std::size_t w = 0; w < words_; ++w)
                for (std::uint64_t bits = p[w]; bits != 0; bits &= bits - 1)
                    visit(w * 64 + static_cast<std::size_t>(std::countr_zero(bits)));
        });
    }

    void expand(std::vector<std::uint64_t>& p) {
        if (deadline_ && (++nodes_ & 1023U) == 0 && Clock::now() > *deadline_) timed_out_ = true;
        if (timed_out_ || best_.size() >= stop_at_) return;
        if (packing_ && current_.size() + packing_bound(p) <= target()) return;

        // Greedy sequential colouring of P; only vertices whose colour can
        // still beat the incumbent become branching candidates.
        const std::size_t kmin = target() + 1 > current_.size() ? target() + 1 - current_.size() : 0;
        std::vector<std::uint32_t> order;
        std::vector<std::uint32_t> color;
        std::vector<std::uint64_t> uncolored = p;
        std::vector<std::uint64_t> q(words_);
        std::size_t k = 0;
        for (std::size_t first = 0; first < words_;) {
            if (uncolored[first] == 0) {
                ++first;
                continue;
            }
            ++k;
            q = uncolored;
            for (std::size_t w = first; w < words_; ++w) {
                while (q[w] != 0) {
                    const auto bit = static_cast<std::size_t>(std::countr_zero(q[w]));
                    const std::size_t v = w * 64 + bit;
                    q[w] &= q[w] - 1;
                    uncolored[w] &= ~(std::uint64_t{1} << bit);
                    const auto row = g_.row(v);
                    for (std::size_t x = w; x < words_; ++x) q[x] &= ~row[x];
                    if (k >= kmin) {
                        order.push_back(static_cast<std::uint32_t>(v));
                        color.push_back(static_cast<std::uint32_t>(k));
                    }
                }
            }
        }
        if (current_.empty()) root_colors_ = k;

        std::vector<std::uint64_t> next(words_);
        for (std::size_t i = order.size(); i-- > 0;) {
            if (current_.size() + color[i] <= target()) return;
            const std::size_t v = order[i];
            current_.push_back(v);
            const auto row = g_.row(v);
            bool empty = true;
            for (std::size_t w = 0; w < words_; ++w) {
                next[w] = p[w] & row[w];
                empty = empty && next[w] == 0;
            }
            if (empty) {
                if (current_.size() > target()) best_ = current_;
            } else {
                expand(next);
            }
            current_.pop_back();
            p[v / 64] &= ~(std::uint64_t{1} << (v % 64));
            if (timed_out_ || best_.size() >= stop_at_) return;
        }
    }

    const BitGraph& g_;
    std::size_t words_;
    std::optional<Clock::time_point> deadline_;
    std::size_t floor_;
    std::size_t stop_at_;
    PackingCounter packing_;
    std::vector<std::size_t> current_;
    std::vector<std::size_t> best_;
    std::size_t root_colors_ = 0;
    std::uint64_t nodes_ = 0;
    bool timed_out_ = false;
};

std::optional<CliqueSearch::Clock::time_point> deadline_after(std::optional<std::chrono::milliseconds> limit) {
    if (!limit) return std::nullopt;
    return CliqueSearch::Clock::now() + *limit;
}

struct SearchOutcome {
    std::vector<std::size_t> clique;  ///< ids of the input graph, or empty
    bool timed_out = false;
    std::size_t root_colors = 0;
};

/// Clique search restricted to the vertices in `keep`.
SearchOutcome search_subset(const BitGraph& g, std::span<const std::size_t> keep, std::size_t floor,
                            const SetCover* cover, std::optional<CliqueSearch::Clock::time_point> deadline,
                            std::size_t stop_at = std::numeric_limits<std::size_t>::max()) {
    const BitGraph sub = g.induced(keep);
    const auto order = degeneracy_order(sub);
    const BitGraph ordered = sub.induced(order);
    std::optional<SetCover> local;
    if (cover) {
        local.emplace();
        local->membership = cover->membership;
        local->family_of = cover->family_of;
        for (const auto v : order) local->sets_of.push_back(cover->sets_of[keep[v]]);
    }
    CliqueSearch search(ordered, deadline, floor, local ? &*local : nullptr, stop_at);
    SearchOutcome out;
    out.root_colors = search.run();
    out.timed_out = search.timed_out();
    for (const auto v : search.best()) out.clique.push_back(keep[order[v]]);
    std::sort(out.clique.begin(), out.clique.end());
    return out;
}

std::size_t greedy_color_count(const BitGraph& g) {
    std::vector<std::size_t> color(g.size(), 0);
    std::size_t used = 0;
    std::vector<char> taken;
    for (std::size_t v = 0; v < g.size(); ++v) {
        taken.assign(used + 2, 0);
        for (std::size_t u = 0; u < v; ++u)
            if (g.has_edge(u, v)) taken[color[u]] = 1;
        std::size_t c = 1;
        while (taken[c]) ++c;
        color[v] = c;
        used = std::max(used, c);
    }
    return used;
}

/// Words sharing a 2t-subset of their footprint pi(x) u supp(x) (CWC) or a
/// t-subset of pi(x) (CCC) are at distance below d, so each such subset names
/// an independent set of the compatibility graph. Subsets are grouped into
/// families by shape: for CWC the number of pairs, of bare coordinates, and of
/// bare coordinates also carrying a pair; for CCC the symbol counts. Every
/// word then has the same number of subsets of each shape.
std::optional<SetCover> footprint_cover(const CompatGraph& g, std::uint64_t membership_budget) {
    const CodeSpec& spec = g.spec;
    const int w = spec.w();
    const int q = spec.q();
    const int n = spec.n();
    const bool cwc = spec.kind() == CodeKind::cwc;
    const int elements = cwc ? 2 * w : w;
    const int k = cwc ? 2 * spec.t() : spec.t();
    const BigCount per_word = binom(elements, k);
    if (per_word * g.vertex_count() > membership_budget) return std::nullopt;

    SetCover cover;
    cover.sets_of.resize(g.vertex_count());
    absl::flat_hash_map<std::string, std::uint32_t> ids;
    absl::flat_hash_map<std::string, std::uint32_t> families;
    std::vector<std::uint16_t> foot;
    std::vector<int> pick(static_cast<std::size_t>(k));
    std::vector<std::size_t> per_family;
    std::string key;
    std::string shape;
    for (std::size_t v = 0; v < g.vertex_count(); ++v) {
        foot.clear();
        const auto sym = g.vertices[v].symbols();
        for (int i = 0; i < n; ++i)
            if (sym[i] != 0) foot.push_back(static_cast<std::uint16_t>(i * (q - 1) + sym[i] - 1));
        if (cwc)
            for (int i = 0; i < n; ++i)
                if (sym[i] != 0) foot.push_back(static_cast<std::uint16_t>(n * (q - 1) + i));
        std::fill(per_family.begin(), per_family.end(), 0);
        std::iota(pick.begin(), pick.end(), 0);
        while (true) {
            key.clear();
            for (const int e : pick) {
                key.push_back(static_cast<char>(foot[e] & 0xFF));
                key.push_back(static_cast<char>(foot[e] >> 8));
            }
            if (cwc) {
                int pairs = 0, bare = 0, matched = 0;
                for (const int e : pick) {
                    if (e < w) {
                        ++pairs;
                    } else {
                        ++bare;
                        matched += std::find(pick.begin(), pick.end(), e - w) != pick.end();
                    }
                }
                shape = {static_cast<char>(pairs), static_cast<char>(bare), static_cast<char>(matched)};
            } else {
                shape.assign(static_cast<std::size_t>(q - 1), 0);
                for (const int e : pick) ++shape[foot[e] % (q - 1)];
            }
            const auto [fam, new_family] = families.try_emplace(shape, static_cast<std::uint32_t>(families.size()));
            if (new_family) per_family.push_back(0);
            ++per_family[fam->second];
            const auto [it, fresh] = ids.try_emplace(key, static_cast<std::uint32_t>(ids.size()));
            if (fresh) cover.family_of.push_back(fam->second);
            cover.sets_of[v].push_back(it->second);
            int j = k - 1;
            while (j >= 0 && pick[j] == elements - k + j) --j;
            if (j < 0) break;
            ++pick[j];
            for (int m = j + 1; m < k; ++m) pick[m] = pick[m - 1] + 1;
        }
        if (v == 0) {
            cover.membership = per_family;
        } else {
            cover.membership.resize(per_family.size(), 0);
            for (std::size_t f = 0; f < per_family.size(); ++f)
                cover.membership[f] = std::min(cover.membership[f], per_family[f]);
        }
    }
    return cover;
}

/// Search that fixes one representative per orbit of the automorphisms fixing
/// the words chosen so far. The automorphisms used are coordinate
/// transpositions and (CWC only) swaps of two nonzero symbols at one
/// coordinate that leave every chosen word unchanged; any subgroup of the
/// stabiliser keeps the case split exhaustive.
class OrbitalSearch {
public:
    /// `ceiling` is a proven upper bound on the clique number; the search ends
    /// as soon as it is reached.
    OrbitalSearch(const CompatGraph& g, const SetCover* cover,
                  std::optional<CliqueSearch::Clock::time_point> deadline, int depth, std::size_t ceiling)
        : g_(g), cover_(cover), packing_(cover), deadline_(deadline), max_depth_(depth), ceiling_(ceiling),
          local_(g.vertex_count(), -1) {
        for (std::size_t v = 0; v < g.vertex_count(); ++v) {
            const auto sym = g.vertices[v].symbols();
            index_.emplace(std::string(sym.begin(), sym.end()), static_cast<std::uint32_t>(v));
        }
    }

    void run() {
        std::vector<std::size_t> all(g_.vertex_count());
        std::iota(all.begin(), all.end(), std::size_t{0});
        std::vector<std::size_t> fixed;
        branch(fixed, all, 0);
    }

    const std::vector<std::size_t>& best() const noexcept { return best_; }
    bool timed_out() const noexcept { return timed_out_; }

private:
    bool finished() const noexcept { return timed_out_ || best_.size() >= ceiling_; }

    std::size_t packing_bound(const std::vector<std::size_t>& p) {
        return packing_.bound([&](auto&& visit) {
            for (const auto v : p) visit(v);
        });
    }

    void branch(std::vector<std::size_t>& fixed, const std::vector<std::size_t>& p, int depth) {
        if (finished() || fixed.size() + p.size() <= best_.size()) return;
        if (p.empty()) {
            best_ = fixed;
            return;
        }
        if (packing_ && fixed.size() + packing_bound(p) <= best_.size()) return;
        if (depth >= max_depth_) {
            const std::size_t floor = best_.size() > fixed.size() ? best_.size() - fixed.size() : 0;
            const SearchOutcome r =
                search_subset(g_.graph, p, floor, cover_, deadline_, ceiling_ - fixed.size());
            timed_out_ = r.timed_out;
            if (!r.clique.empty() && fixed.size() + r.clique.size() > best_.size()) {
                best_ = fixed;
                best_.insert(best_.end(), r.clique.begin(), r.clique.end());
            }
            return;
        }

        const auto orbits = orbits_of(fixed, p);
        std::vector<char> remaining(g_.vertex_count(), 0);
        for (const auto v : p) remaining[v] = 1;
        for (const auto& orbit : orbits) {
            const std::size_t r = orbit.front();
            std::vector<std::size_t> next;
            for (const auto v : p)
                if (remaining[v] && g_.graph.has_edge(r, v)) next.push_back(v);
            fixed.push_back(r);
            branch(fixed, next, depth + 1);
            fixed.pop_back();
            if (finished()) return;
            for (const auto v : orbit) remaining[v] = 0;
        }
    }

    /// Orbits on p (which must be invariant), each sorted, ordered by least member.
    std::vector<std::vector<std::size_t>> orbits_of(const std::vector<std::size_t>& fixed,
                                                    const std::vector<std::size_t>& p) {
        const CodeSpec& spec = g_.spec;
        const int n = spec.n();
        for (std::size_t i = 0; i < p.size(); ++i) local_[p[i]] = static_cast<std::ptrdiff_t>(i);
        std::vector<std::size_t> parent(p.size());
        std::iota(parent.begin(), parent.end(), std::size_t{0});
        const auto find = [&](std::size_t x) {
            while (parent[x] != x) x = parent[x] = parent[parent[x]];
            return x;
        };
        std::string image;
        const auto unite_under = [&](const auto& apply) {
            for (std::size_t i = 0; i < p.size(); ++i) {
                const auto sym = g_.vertices[p[i]].symbols();
                image.assign(sym.begin(), sym.end());
                apply(image);
                const auto it = index_.find(image);
                if (it == index_.end() || local_[it->second] < 0)
                    throw std::logic_error("candidate set not invariant");
                const std::size_t a = find(i), b = find(static_cast<std::size_t>(local_[it->second]));
                if (a != b) parent[std::max(a, b)] = std::min(a, b);
            }
        };
        const auto fixes = [&](auto&& pred) {
            return std::all_of(fixed.begin(), fixed.end(),
                               [&](std::size_t v) { return pred(g_.vertices[v].symbols()); });
        };
        for (int i = 0; i < n; ++i) {
            for (int j = i + 1; j < n; ++j) {
                if (!fixes([&](auto s) { return s[i] == s[j]; })) continue;
                unite_under([&](std::string& x) { std::swap(x[i], x[j]); });
            }
        }
        if (spec.kind() == CodeKind::cwc) {
            for (int i = 0; i < n; ++i) {
                for (int a = 1; a < spec.q(); ++a) {
                    for (int b = a + 1; b < spec.q(); ++b) {
                        if (!fixes([&](auto s) { return s[i] != a && s[i] != b; })) continue;
                        unite_under([&](std::string& x) {
                            if (x[i] == a) x[i] = static_cast<char>(b);
                            else if (x[i] == b) x[i] = static_cast<char>(a);
                        });
                    }
                }
            }
        }

        std::vector<std::vector<std::size_t>> orbits;
        std::vector<std::ptrdiff_t> slot(p.size(), -1);
        for (std::size_t i = 0; i < p.size(); ++i) {
            const std::size_t root = find(i);
            if (slot[root] < 0) {
                slot[root] = static_cast<std::ptrdiff_t>(orbits.size());
                orbits.emplace_back();
            }
            orbits[static_cast<std::size_t>(slot[root])].push_back(p[i]);
        }
        for (const auto v : p) local_[v] = -1;
        return orbits;
    }

    const CompatGraph& g_;
    const SetCover* cover_;
    PackingCounter packing_;
    std::optional<CliqueSearch::Clock::time_point> deadline_;
    int max_depth_;
    std::size_t ceiling_;
    absl::flat_hash_map<std::string, std::uint32_t> index_;
    std::vector<std::ptrdiff_t> local_;
    std::vector<std::size_t> best_;
    bool timed_out_ = false;
};

constexpr std::uint64_t kCoverBudget = 20'000'000;
constexpr int kOrbitalDepth = 6;

}  // namespace

CliqueResult max_clique(const BitGraph& graph, std::optional<std::chrono::milliseconds> time_limit) {
    CliqueResult out;
    if (graph.size() == 0) return out;
    std::vector<std::size_t> all(graph.size());
    std::iota(all.begin(), all.end(), std::size_t{0});
    const SearchOutcome r = search_subset(graph, all, 0, nullptr, deadline_after(time_limit));
    out.clique = r.clique;
    if (r.timed_out) {
        out.status = SearchStatus::timeout;
        out.upper_bound = std::max(r.root_colors, out.clique.size());
    } else {
        out.upper_bound = out.clique.size();
    }
    return out;
}

ExactResult exact_A(const CodeSpec& spec, std::optional<std::chrono::milliseconds> time_limit,
                    std::size_t vertex_cap) {
    const CompatGraph g = build_compat_graph(spec, vertex_cap);
    ExactResult out{0, 0, Code(spec), upper_bound(spec).bound, SearchStatus::exact};
    if (g.vertex_count() == 0) return out;

    const auto cover = footprint_cover(g, kCoverBudget);
    std::size_t ceiling = greedy_color_count(g.graph);
    if (cover) {
        PackingCounter packing(&*cover);
        ceiling = std::min(ceiling, packing.bound([&](auto&& visit) {
            for (std::size_t v = 0; v < g.vertex_count(); ++v) visit(v);
        }));
    }
    OrbitalSearch search(g, cover ? &*cover : nullptr, deadline_after(time_limit), kOrbitalDepth, ceiling);
    search.run();

    std::vector<std::size_t> ids = search.best();
    std::sort(ids.begin(), ids.end());
    std::vector<Word> words;
    for (const auto v : ids) words.push_back(g.vertices[v]);
    out.value = words.size();
    out.witness = Code(spec, std::move(words));
    if (search.timed_out() && out.value < ceiling) {
        out.status = SearchStatus::timeout;
        out.upper = std::max(ceiling, out.value);
    } else {
        out.upper = out.value;
    }
    return out;
}

}  // namespace cwcmatch
