#include "freefft/fpquot.hpp"

#include <algorithm>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <unordered_map>
#include <unordered_set>

namespace freefft {

namespace {

std::uint64_t fnv1a(std::string_view s)
{
    std::uint64_t h = 1469598103934665603ull;
    for (unsigned char c : s) {
        h ^= c;
        h *= 1099511628211ull;
    }
    return h;
}

struct RowHash {
    std::size_t operator()(const SparseVector& v) const
    {
        std::size_t h = v.size();
        for (const auto& e : v) {
            h = h * 1000003u ^ e.col;
            h = h * 1000003u ^ mpz_get_ui(e.value.get_num_mpz_t());
            h = h * 1000003u ^ mpz_get_ui(e.value.get_den_mpz_t());
        }
        return h;
    }
};

} // namespace

// ---------------------------------------------------------------------------

Presentation::Presentation(AlgebraRef alg, std::vector<FreeElement> relations, std::vector<int> weights)
    : alg_(std::move(alg)), relations_(std::move(relations)), weights_(std::move(weights))
{
    if (weights_.empty())
        weights_.assign(alg_->size(), 0);
    if (weights_.size() != alg_->size())
        throw std::invalid_argument("presentation: one weight per generator required");

    std::ostringstream canon;
    canon << alg_->name();
    for (const auto& b : alg_->blocks())
        canon << '|' << b.symbol << ':' << b.rows << 'x' << b.cols;
    canon << "|w";
    for (int w : weights_)
        canon << ',' << w;

    for (const auto& r : relations_) {
        if (!(*r.algebra() == *alg_))
            throw std::invalid_argument("presentation: relation lives in another algebra");
        if (r.is_zero())
            throw std::invalid_argument("presentation: zero relation");
        std::optional<int> wt;
        for (const auto& [w, c] : r.terms()) {
            int x = weight(w);
            if (wt && *wt != x)
                throw std::invalid_argument("presentation: relation not homogeneous for the grading: " + r.to_string());
            wt = x;
        }
        relation_weight_.push_back(*wt);
        canon << "|r";
        for (const auto& [w, c] : r.terms()) {
            canon << ';' << c.get_str() << ':';
            for (Letter l : w)
                canon << l << '.';
        }
    }
    std::ostringstream hex;
    hex << std::hex << fnv1a(canon.str());
    fingerprint_ = hex.str();
}

int Presentation::weight(const Word& w) const
{
    int s = 0;
    for (Letter l : w)
        s += weights_.at(l);
    return s;
}

int Presentation::max_relation_degree() const
{
    int d = 0;
    for (const auto& r : relations_)
        d = std::max(d, r.degree());
    return d;
}

const char* to_string(Certification c)
{
    return c == Certification::CertifiedZero ? "CertifiedZero" : "NotCertified";
}

// ---------------------------------------------------------------------------

struct TruncatedQuotient::Component {
    EchelonForm ech;
    // keys of quotient-basis words, in (degree, lex) order
    std::vector<std::uint64_t> quotient_keys;
};

TruncatedQuotient::TruncatedQuotient(Presentation p, int d)
    : p_(std::move(p)), d_(d), g_(p_.algebra()->size())
{
    if (d_ < p_.max_relation_degree())
        throw std::invalid_argument("truncation degree " + std::to_string(d_) +
                                    " is below the maximal relation degree " +
                                    std::to_string(p_.max_relation_degree()));
    // total word count must fit comfortably in 64 bits
    long double total = 0, pw = 1;
    for (int k = 0; k <= d_; ++k) {
        total += pw;
        pw *= static_cast<long double>(g_);
    }
    if (total > 1e17L)
        throw std::invalid_argument("truncated quotient too large to index");

    power_.assign(static_cast<std::size_t>(d_) + 1, 1);
    for (int k = 1; k <= d_; ++k)
        power_[k] = power_[k - 1] * g_;
    desc_offset_.assign(static_cast<std::size_t>(d_) + 1, 0);
    for (int k = d_ - 1; k >= 0; --k)
        desc_offset_[k] = desc_offset_[k + 1] + power_[k + 1];
}

TruncatedQuotient::~TruncatedQuotient() = default;

std::uint64_t TruncatedQuotient::key_of(const Word& w) const
{
    return desc_offset_.at(w.size()) + word_rank(w, g_);
}

Word TruncatedQuotient::word_of_key(std::uint64_t key) const
{
    for (int k = 0; k <= d_; ++k) {
        if (key >= desc_offset_[k] && key < desc_offset_[k] + power_[k])
            return word_unrank(key - desc_offset_[k], static_cast<std::size_t>(k), g_);
    }
    throw std::out_of_range("key outside the truncated word range");
}

void TruncatedQuotient::check_degree(const FreeElement& x) const
{
    if (!(*x.algebra() == *p_.algebra()))
        throw std::invalid_argument("element does not belong to the presented algebra");
    if (x.degree() > d_)
        throw std::invalid_argument("element of degree " + std::to_string(x.degree()) +
                                    " exceeds truncation degree " + std::to_string(d_));
}

std::size_t TruncatedQuotient::ambient_dim() const
{
    std::size_t n = 0;
    for (auto p : power_)
        n += p;
    return n;
}

namespace {

// Ranks of all words of a given length, bucketed by weight.
using WeightBuckets = std::map<int, std::vector<std::uint64_t>>;

WeightBuckets bucket_words(std::size_t length, std::size_t g, const std::vector<int>& weights)
{
    WeightBuckets out;
    std::uint64_t count = 1;
    for (std::size_t k = 0; k < length; ++k)
        count *= g;
    // odometer over digits, tracking the weight incrementally
    std::vector<std::size_t> digits(length, 0);
    int wt = static_cast<int>(length) * weights[0];
    for (std::uint64_t r = 0; r < count; ++r) {
        out[wt].push_back(r);
        for (std::size_t pos = length; pos-- > 0;) {
            wt -= weights[digits[pos]];
            if (++digits[pos] < g) {
                wt += weights[digits[pos]];
                break;
            }
            digits[pos] = 0;
            wt += weights[0];
        }
    }
    return out;
}

std::string serialize_rows(const std::vector<SparseVector>& rows)
{
    std::ostringstream os;
    for (const auto& r : rows) {
        for (std::size_t k = 0; k < r.size(); ++k)
            os << (k ? " " : "") << r[k].col << ':' << r[k].value.get_str();
        os << '\n';
    }
    return os.str();
}

} // namespace

std::unique_ptr<TruncatedQuotient::Component> TruncatedQuotient::build_component(int weight) const
{
    auto comp = std::make_unique<Component>();
    const auto& weights = p_.weights();

    std::vector<WeightBuckets> buckets;
    for (int len = 0; len <= d_; ++len)
        buckets.push_back(bucket_words(static_cast<std::size_t>(len), g_, weights));

    namespace fs = std::filesystem;
    std::optional<fs::path> cache_file;
    if (!persist_dir_.empty())
        cache_file = fs::path(persist_dir_) /
                     (p_.fingerprint() + "-d" + std::to_string(d_) + "-w" + std::to_string(weight) + ".ech");

    bool loaded = false;
    if (cache_file && fs::exists(*cache_file)) {
        std::ifstream in(*cache_file);
        std::string line;
        EchelonForm ech;
        bool ok = true;
        while (ok && std::getline(in, line)) {
            std::istringstream ls(line);
            std::string tok;
            SparseVector row;
            while (ls >> tok) {
                auto colon = tok.find(':');
                if (colon == std::string::npos) {
                    ok = false;
                    break;
                }
                row.push_back({static_cast<std::size_t>(std::stoull(tok.substr(0, colon))),
                               parse_rational(tok.substr(colon + 1))});
            }
            if (ok && !row.empty())
                ech.insert(std::move(row));
        }
        if (ok) {
            comp->ech = std::move(ech);
            loaded = true;
        }
    }

    if (!loaded) {
        struct RelTerm {
            std::size_t degree;
            std::uint64_t rank;
            Rational coeff;
        };
        std::vector<std::vector<RelTerm>> rels;
        std::vector<int> rel_degree;
        for (const auto& r : p_.relations()) {
            std::vector<RelTerm> terms;
            for (const auto& [w, c] : r.terms())
                terms.push_back({w.size(), word_rank(w, g_), c});
            rels.push_back(std::move(terms));
            rel_degree.push_back(r.degree());
        }

        std::unordered_set<SparseVector, RowHash> seen;
        const auto empty_bucket = std::vector<std::uint64_t>{};
        for (int s = 0; s <= d_; ++s) {
            for (std::size_t ri = 0; ri < rels.size(); ++ri) {
                if (rel_degree[ri] + s > d_)
                    continue;
                const int need = weight - p_.relation_weight_[ri];
                for (int la = 0; la <= s; ++la) {
                    const int lb = s - la;
                    for (const auto& [wa, ranks_a] : buckets[la]) {
                        auto it = buckets[lb].find(need - wa);
                        if (it == buckets[lb].end())
                            continue;
                        for (auto ra : ranks_a) {
                            for (auto rb : it->second) {
                                SparseVector row;
                                row.reserve(rels[ri].size());
                                for (const auto& term : rels[ri]) {
                                    const std::size_t deg = static_cast<std::size_t>(la) + term.degree + lb;
                                    const std::uint64_t rank =
                                        (ra * power_[term.degree] + term.rank) * power_[lb] + rb;
                                    row.push_back({static_cast<std::size_t>(desc_offset_[deg] + rank), term.coeff});
                                }
                                std::sort(row.begin(), row.end(),
                                          [](const SparseEntry& a, const SparseEntry& b) { return a.col < b.col; });
                                if (!seen.insert(row).second)
                                    continue;
                                comp->ech.insert(std::move(row));
                            }
                        }
                    }
                }
            }
        }

        if (cache_file) {
            std::error_code ec;
            fs::create_directories(cache_file->parent_path(), ec);
            std::ofstream out(*cache_file);
            if (out)
                out << serialize_rows(comp->ech.rows());
        }
    }

    for (int len = 0; len <= d_; ++len) {
        auto it = buckets[len].find(weight);
        if (it == buckets[len].end())
            continue;
        for (auto r : it->second) {
            const std::uint64_t key = desc_offset_[len] + r;
            if (!comp->ech.is_pivot(key))
                comp->quotient_keys.push_back(key);
        }
    }
    return comp;
}

const TruncatedQuotient::Component& TruncatedQuotient::component(int weight) const
{
    std::lock_guard lock(mu_);
    auto it = components_.find(weight);
    if (it == components_.end())
        it = components_.emplace(weight, build_component(weight)).first;
    return *it->second;
}

std::vector<int> TruncatedQuotient::weights() const
{
    const auto& w = p_.weights();
    const int lo = *std::min_element(w.begin(), w.end());
    const int hi = *std::max_element(w.begin(), w.end());
    std::vector<int> out;
    // all weights reachable by words of length <= d
    const int span_lo = std::min(0, lo * d_), span_hi = std::max(0, hi * d_);
    std::vector<bool> cur(static_cast<std::size_t>(span_hi - span_lo + 1), false), all = cur;
    cur[static_cast<std::size_t>(-span_lo)] = true;
    all = cur;
    for (int len = 1; len <= d_; ++len) {
        std::vector<bool> next(cur.size(), false);
        for (std::size_t i = 0; i < cur.size(); ++i) {
            if (!cur[i])
                continue;
            for (int x : w) {
                const auto j = static_cast<std::ptrdiff_t>(i) + x;
                if (j >= 0 && j < static_cast<std::ptrdiff_t>(next.size()))
                    next[static_cast<std::size_t>(j)] = true;
            }
        }
        cur = next;
        for (std::size_t i = 0; i < cur.size(); ++i)
            if (cur[i])
                all[i] = true;
    }
    for (std::size_t i = 0; i < all.size(); ++i)
        if (all[i])
            out.push_back(static_cast<int>(i) + span_lo);
    return out;
}

std::size_t TruncatedQuotient::component_ideal_dim(int weight) const
{
    return component(weight).ech.rank();
}

std::size_t TruncatedQuotient::component_quotient_dim(int weight) const
{
    return component(weight).quotient_keys.size();
}

std::vector<Word> TruncatedQuotient::component_quotient_basis(int weight) const
{
    std::vector<Word> out;
    for (auto key : component(weight).quotient_keys)
        out.push_back(word_of_key(key));
    return out;
}

std::size_t TruncatedQuotient::ideal_dim() const
{
    std::size_t n = 0;
    for (int w : weights())
        n += component_ideal_dim(w);
    return n;
}

Subspace TruncatedQuotient::ideal_span() const
{
    // standard index: words of lower degree first, lex inside a degree
    std::vector<std::uint64_t> std_offset(power_.size(), 0);
    for (std::size_t k = 1; k < power_.size(); ++k)
        std_offset[k] = std_offset[k - 1] + power_[k - 1];
    std::vector<SparseVector> rows;
    for (int w : weights()) {
        for (const auto& r : component(w).ech.rows()) {
            SparseVector v;
            for (const auto& e : r) {
                Word word = word_of_key(e.col);
                v.push_back({static_cast<std::size_t>(std_offset[word.size()] + word_rank(word, g_)), e.value});
            }
            sparse::canonicalize(v);
            rows.push_back(std::move(v));
        }
    }
    return Subspace::span(ambient_dim(), rows);
}

std::vector<Word> TruncatedQuotient::quotient_basis() const
{
    std::vector<Word> out;
    for (int w : weights())
        for (auto key : component(w).quotient_keys)
            out.push_back(word_of_key(key));
    std::sort(out.begin(), out.end(), [](const Word& a, const Word& b) {
        if (a.size() != b.size())
            return a.size() < b.size();
        return a < b;
    });
    return out;
}

FreeElement TruncatedQuotient::normal_form(const FreeElement& x) const
{
    check_degree(x);
    std::map<int, SparseVector> parts;
    for (const auto& [w, c] : x.terms())
        parts[p_.weight(w)].push_back({static_cast<std::size_t>(key_of(w)), c});
    FreeElement out(p_.algebra());
    for (auto& [wt, v] : parts) {
        sparse::canonicalize(v);
        auto reduced = component(wt).ech.reduce(std::move(v));
        for (const auto& e : reduced)
            out.add_term(word_of_key(e.col), e.value);
    }
    return out;
}

SparseVector TruncatedQuotient::coordinates(const FreeElement& x) const
{
    auto basis = quotient_basis();
    std::map<Word, std::size_t> index;
    for (std::size_t i = 0; i < basis.size(); ++i)
        index.emplace(basis[i], i);
    SparseVector v;
    for (const auto& [w, c] : normal_form(x).terms())
        v.push_back({index.at(w), c});
    sparse::canonicalize(v);
    return v;
}

Certification TruncatedQuotient::is_zero_mod(const FreeElement& x) const
{
    return normal_form(x).is_zero() ? Certification::CertifiedZero : Certification::NotCertified;
}

// ---------------------------------------------------------------------------

QuotientCache& QuotientCache::global()
{
    static QuotientCache cache;
    return cache;
}

std::shared_ptr<const TruncatedQuotient> QuotientCache::get(const Presentation& p, int d)
{
    std::lock_guard lock(mu_);
    auto key = std::make_pair(p.fingerprint(), d);
    auto it = entries_.find(key);
    if (it == entries_.end()) {
        auto q = std::make_shared<TruncatedQuotient>(p, d);
        q->set_persist_dir(persist_dir_);
        it = entries_.emplace(key, std::move(q)).first;
    }
    return it->second;
}

void QuotientCache::set_persist_dir(std::string dir)
{
    std::lock_guard lock(mu_);
    persist_dir_ = std::move(dir);
}

void QuotientCache::clear()
{
    std::lock_guard lock(mu_);
    entries_.clear();
}

Subspace ideal_component(const Presentation& p, int d)
{
    return TruncatedQuotient(p, d).ideal_span();
}

std::vector<Word> quotient_basis(const Presentation& p, int d)
{
    return TruncatedQuotient(p, d).quotient_basis();
}

FreeElement normal_form(const TruncatedQuotient& q, const FreeElement& x)
{
    return q.normal_form(x);
}

Certification is_zero_mod(const TruncatedQuotient& q, const FreeElement& x)
{
    return q.is_zero_mod(x);
}

StabilizationProbe stabilization_probe(const Presentation& p, int d, std::optional<int> weight)
{
    TruncatedQuotient lower(p, d - 2);
    TruncatedQuotient upper(p, d);
    auto count_low = [&](const TruncatedQuotient& q) {
        std::size_t n = 0;
        auto basis = weight ? q.component_quotient_basis(*weight) : q.quotient_basis();
        for (const auto& w : basis)
            if (static_cast<int>(w.size()) <= d - 2)
                ++n;
        return n;
    };
    StabilizationProbe out;
    out.d = d;
    out.low_basis_at_lower = count_low(lower);
    out.low_basis_at_d = count_low(upper);
    return out;
}

} // namespace freefft
