#include "qdouble/rewrite.hpp"

#include "qdouble/errors.hpp"

#include <algorithm>
#include <functional>
#include <queue>
#include <sstream>

namespace qdouble {

bool deglex_less(const LWord& a, const LWord& b) {
    if (a.size() != b.size()) return a.size() < b.size();
    return a < b;
}

namespace {

std::string word_str(const LWord& w) {
    std::ostringstream os;
    for (std::size_t i = 0; i < w.size(); ++i) os << (i ? "." : "") << (w[i] + 1);
    return w.empty() ? "1" : os.str();
}

void add_term(WordPoly& p, const LWord& w, const Scalar& c) {
    if (c.is_zero()) return;
    auto it = p.find(w);
    if (it == p.end()) {
        p.emplace(w, c);
        return;
    }
    it->second += c;
    if (it->second.is_zero()) p.erase(it);
}

LWord concat(const LWord& a, const LWord& b, const LWord& c = {}) {
    LWord w;
    w.reserve(a.size() + b.size() + c.size());
    w.insert(w.end(), a.begin(), a.end());
    w.insert(w.end(), b.begin(), b.end());
    w.insert(w.end(), c.begin(), c.end());
    return w;
}

const LWord& leading_word(const WordPoly& p) {
    auto best = p.begin();
    for (auto it = p.begin(); it != p.end(); ++it)
        if (deglex_less(best->first, it->first)) best = it;
    return best->first;
}

}  // namespace

RewriteSystem::RewriteSystem(const RootDatum& datum, int maxdeg, long perturbation)
    : datum_(&datum), rank_(datum.rank()), maxdeg_(maxdeg) {
    bool first = true;
    for (int r = 0; r < rank_; ++r)
        for (int s = 0; s < rank_; ++s) {
            if (r == s) continue;
            const long n = 1 - datum.cartan(r, s);
            WordPoly rel;
            for (long k = 0; k <= n; ++k) {
                LWord w(static_cast<std::size_t>(n - k), r);
                w.push_back(s);
                w.insert(w.end(), static_cast<std::size_t>(k), r);
                Scalar c = qbinom(n, k, datum.d(r));
                if (k % 2) c = -c;
                if (first && k == 1 && perturbation != 0) c += Scalar(perturbation);
                add_term(rel, w, c);
            }
            first = false;
            relations_.push_back(std::move(rel));
        }
    complete();
    check_counts();
}

bool RewriteSystem::find_match(const LWord& w, const LWord& lhs, std::size_t& pos) {
    if (lhs.size() > w.size()) return false;
    auto it = std::search(w.begin(), w.end(), lhs.begin(), lhs.end());
    if (it == w.end()) return false;
    pos = static_cast<std::size_t>(it - w.begin());
    return true;
}

bool RewriteSystem::is_irreducible(const LWord& w) const {
    std::size_t pos;
    for (const auto& r : rules_)
        if (find_match(w, r.lhs, pos)) return false;
    return true;
}

WordPoly RewriteSystem::reduce(WordPoly p) const {
    while (true) {
        const LWord* best = nullptr;
        const Rule* rule = nullptr;
        std::size_t best_pos = 0;
        for (const auto& [w, c] : p) {
            if (best && !deglex_less(*best, w)) continue;
            for (const auto& r : rules_) {
                std::size_t pos;
                if (find_match(w, r.lhs, pos)) {
                    best = &w;
                    rule = &r;
                    best_pos = pos;
                    break;
                }
            }
        }
        if (!best) return p;
        LWord w = *best;
        Scalar c = p[w];
        p.erase(w);
        LWord pre(w.begin(), w.begin() + static_cast<long>(best_pos));
        LWord post(w.begin() + static_cast<long>(best_pos + rule->lhs.size()), w.end());
        for (const auto& [u, d] : rule->rhs) add_term(p, concat(pre, u, post), c * d);
    }
}

void RewriteSystem::complete() {
    struct Pair {
        std::size_t degree;
        LWord l1, l2;
        std::size_t overlap;
        bool operator>(const Pair& o) const {
            if (degree != o.degree) return degree > o.degree;
            return std::tie(l1, l2, overlap) > std::tie(o.l1, o.l2, o.overlap);
        }
    };
    std::priority_queue<Pair, std::vector<Pair>, std::greater<Pair>> queue;

    auto rule_of = [this](const LWord& lhs) -> const Rule* {
        for (const auto& r : rules_)
            if (r.lhs == lhs) return &r;
        return nullptr;
    };
    auto pairs_with = [&](const LWord& a, const LWord& b) {
        for (std::size_t k = 1; k < std::min(a.size(), b.size()); ++k)
            if (std::equal(a.end() - static_cast<long>(k), a.end(), b.begin()))
                queue.push({a.size() + b.size() - k, a, b, k});
    };
    auto s_poly = [&](const Rule& r1, const Rule& r2, std::size_t k) {
        LWord tail(r2.lhs.begin() + static_cast<long>(k), r2.lhs.end());
        LWord head(r1.lhs.begin(), r1.lhs.end() - static_cast<long>(k));
        WordPoly s;
        for (const auto& [u, c] : r1.rhs) add_term(s, concat(u, tail), c);
        for (const auto& [u, c] : r2.rhs) add_term(s, concat(head, u), -c);
        return s;
    };

    std::function<void(WordPoly, const std::string&)> add_poly = [&](WordPoly p, const std::string& origin) {
        p = reduce(std::move(p));
        if (p.empty()) return;
        LWord lead = leading_word(p);
        Scalar inv = p[lead].inverse();
        Rule nr;
        nr.lhs = lead;
        nr.origin = origin;
        for (const auto& [w, c] : p)
            if (w != lead) nr.rhs.emplace(w, -(c * inv));
        // interreduce: rules whose lhs contains the new lhs are re-derived
        std::vector<Rule> displaced;
        std::vector<Rule> kept;
        for (auto& r : rules_) {
            std::size_t pos;
            if (find_match(r.lhs, lead, pos))
                displaced.push_back(std::move(r));
            else
                kept.push_back(std::move(r));
        }
        rules_ = std::move(kept);
        rules_.push_back(nr);
        for (const auto& r : rules_) {
            pairs_with(r.lhs, lead);
            if (r.lhs != lead) pairs_with(lead, r.lhs);
        }
        for (auto& r : displaced) {
            WordPoly back = r.rhs;
            for (auto& [w, c] : back) c = -c;
            add_term(back, r.lhs, 1);
            add_poly(std::move(back), r.origin);
        }
    };

    int idx = 0;
    for (const auto& rel : relations_) add_poly(rel, "serre#" + std::to_string(++idx));

    bool all_resolved = true;
    while (!queue.empty()) {
        Pair pr = queue.top();
        queue.pop();
        if (static_cast<int>(pr.degree) > maxdeg_) continue;
        const Rule* r1 = rule_of(pr.l1);
        const Rule* r2 = rule_of(pr.l2);
        if (!r1 || !r2) continue;
        WordPoly s = s_poly(*r1, *r2, pr.overlap);
        LWord w = concat(pr.l1, LWord(pr.l2.begin() + static_cast<long>(pr.overlap), pr.l2.end()));
        add_poly(std::move(s), "critical pair (" + word_str(pr.l1) + ", " + word_str(pr.l2) + ") at " + word_str(w));
    }
    status_.maxdeg = maxdeg_;
    status_.resolved_to_maxdeg = all_resolved;

    // every overlap among the final rules, any degree
    bool complete = true;
    for (const auto& a : rules_) {
        for (const auto& b : rules_) {
            for (std::size_t k = 1; k < std::min(a.lhs.size(), b.lhs.size()); ++k) {
                if (!std::equal(a.lhs.end() - static_cast<long>(k), a.lhs.end(), b.lhs.begin())) continue;
                if (!reduce(s_poly(a, b, k)).empty()) {
                    complete = false;
                    break;
                }
            }
            if (!complete) break;
        }
        if (!complete) break;
    }
    status_.complete = complete;
}

void RewriteSystem::check_counts() {
    std::map<std::vector<long>, long> counts;
    LWord w;
    std::vector<long> md(static_cast<std::size_t>(rank_), 0);
    std::function<void()> rec = [&]() {
        ++counts[md];
        if (static_cast<int>(w.size()) == maxdeg_) return;
        for (int a = 0; a < rank_; ++a) {
            w.push_back(a);
            bool ok = true;
            for (const auto& r : rules_)
                if (r.lhs.size() <= w.size() && std::equal(r.lhs.begin(), r.lhs.end(), w.end() - static_cast<long>(r.lhs.size()))) {
                    ok = false;
                    break;
                }
            if (ok) {
                ++md[a];
                rec();
                --md[a];
            }
            w.pop_back();
        }
    };
    rec();

    status_.pbw_counts_match = true;
    for (int deg = 0; deg <= maxdeg_; ++deg) status_.per_degree[deg] = true;
    // all multidegrees of total degree ≤ maxdeg
    std::vector<long> c(static_cast<std::size_t>(rank_), 0);
    std::function<void(int, long)> enumerate = [&](int i, long left) {
        if (i == rank_) {
            long expect = datum_->kostant_partition(c);
            auto it = counts.find(c);
            long got = it == counts.end() ? 0 : it->second;
            if (got != expect) {
                long deg = 0;
                for (long x : c) deg += x;
                status_.per_degree[static_cast<int>(deg)] = false;
                if (status_.pbw_counts_match) {
                    std::ostringstream os;
                    os << "multidegree (";
                    for (std::size_t j = 0; j < c.size(); ++j) os << (j ? "," : "") << c[j];
                    os << "): " << got << " irreducible words, PBW dimension " << expect;
                    for (const auto& r : rules_)
                        if (static_cast<long>(r.lhs.size()) <= deg && r.origin.rfind("critical", 0) == 0)
                            os << "; rule " << word_str(r.lhs) << " from " << r.origin;
                    status_.witness = os.str();
                }
                status_.pbw_counts_match = false;
            }
            return;
        }
        for (long k = 0; k <= left; ++k) {
            c[i] = k;
            enumerate(i + 1, left - k);
        }
        c[i] = 0;
    };
    enumerate(0, maxdeg_);
}

const WordPoly& RewriteSystem::normal_form(const LWord& w) const {
    std::lock_guard<std::mutex> lock(cache_mutex_);
    auto it = cache_.find(w);
    if (it != cache_.end()) return it->second;
    if (!status_.complete && static_cast<int>(w.size()) > maxdeg_)
        throw UndecidedError("normal form undecided at degree " + std::to_string(w.size()) +
                             ": rewriting system certified only up to degree " + std::to_string(maxdeg_));
    WordPoly p;
    p.emplace(w, Scalar(1));
    return cache_.emplace(w, reduce(std::move(p))).first->second;
}

WordPoly RewriteSystem::normal_form(const WordPoly& p) const {
    WordPoly out;
    for (const auto& [w, c] : p)
        for (const auto& [u, d] : normal_form(w)) add_term(out, u, c * d);
    return out;
}

std::vector<LWord> RewriteSystem::irreducible_words(const std::vector<long>& multidegree) const {
    std::vector<LWord> out;
    LWord w;
    std::vector<long> left = multidegree;
    std::function<void()> rec = [&]() {
        if (std::all_of(left.begin(), left.end(), [](long x) { return x == 0; })) {
            out.push_back(w);
            return;
        }
        for (int a = 0; a < rank_; ++a) {
            if (left[a] == 0) continue;
            w.push_back(a);
            bool ok = true;
            for (const auto& r : rules_)
                if (r.lhs.size() <= w.size() && std::equal(r.lhs.begin(), r.lhs.end(), w.end() - static_cast<long>(r.lhs.size()))) {
                    ok = false;
                    break;
                }
            if (ok) {
                --left[a];
                rec();
                ++left[a];
            }
            w.pop_back();
        }
    };
    rec();
    return out;
}

}  // namespace qdouble
