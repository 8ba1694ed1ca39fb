#pragma once

// Finitely presented algebras F/I, truncated by filtration degree.
//
// I_{<=d} is the span of all a*r*b with a, b words, r a relation and
// deg(a) + deg(r) + deg(b) <= d. It is contained in I but may miss
// elements of I of degree <= d whose only witnesses need higher degree, so
// membership in I_{<=d} proves vanishing in F/I while non-membership proves
// nothing. Everything below is phrased in those terms.

#include "freefft/exactlin.hpp"
#include "freefft/freealg.hpp"

#include <map>
#include <memory>
#include <mutex>
#include <optional>
#include <string>
#include <vector>

namespace freefft {

class Presentation {
public:
    /// weights: optional integer grading on letters (one per generator). Every
    /// relation must be homogeneous for it; the ideal then splits by weight.
    Presentation(AlgebraRef alg, std::vector<FreeElement> relations, std::vector<int> weights = {});

    const AlgebraRef& algebra() const { return alg_; }
    const std::vector<FreeElement>& relations() const { return relations_; }
    const std::vector<int>& weights() const { return weights_; }
    int weight(const Word& w) const;
    int max_relation_degree() const;
    /// Stable content hash (hex) over generators, weights and relations.
    const std::string& fingerprint() const { return fingerprint_; }

private:
    AlgebraRef alg_;
    std::vector<FreeElement> relations_;
    std::vector<int> weights_;
    std::vector<int> relation_weight_;
    std::string fingerprint_;

    friend class TruncatedQuotient;
};

enum class Certification { CertifiedZero, NotCertified };

const char* to_string(Certification c);

class TruncatedQuotient {
public:
    /// Throws std::invalid_argument if d is smaller than a relation degree.
    TruncatedQuotient(Presentation p, int d);
    ~TruncatedQuotient();
    TruncatedQuotient(const TruncatedQuotient&) = delete;
    TruncatedQuotient& operator=(const TruncatedQuotient&) = delete;

    const Presentation& presentation() const { return p_; }
    int truncation() const { return d_; }

    /// Number of words of degree <= d.
    std::size_t ambient_dim() const;
    std::size_t ideal_dim() const;
    /// I_{<=d} in coordinates over all words of degree <= d, ordered by
    /// degree and then lexicographically.
    Subspace ideal_span() const;
    /// Non-pivot words, ordered by degree and then lexicographically.
    std::vector<Word> quotient_basis() const;
    /// The representative of x modulo I_{<=d} supported on quotient_basis().
    FreeElement normal_form(const FreeElement& x) const;
    /// Coordinates of normal_form(x) over quotient_basis().
    SparseVector coordinates(const FreeElement& x) const;
    Certification is_zero_mod(const FreeElement& x) const;

    /// Per-weight data; built on first use.
    std::size_t component_ideal_dim(int weight) const;
    std::size_t component_quotient_dim(int weight) const;
    std::vector<Word> component_quotient_basis(int weight) const;
    /// Weights for which words of degree <= d exist.
    std::vector<int> weights() const;

    /// Optional on-disk cache of component echelon forms.
    void set_persist_dir(std::string dir) { persist_dir_ = std::move(dir); }

private:
    struct Component;

    const Component& component(int weight) const;
    std::unique_ptr<Component> build_component(int weight) const;
    std::uint64_t key_of(const Word& w) const;
    Word word_of_key(std::uint64_t key) const;
    void check_degree(const FreeElement& x) const;

    Presentation p_;
    int d_;
    std::size_t g_;
    // offsets_[k] = number of words with degree > k and <= d
    std::vector<std::uint64_t> desc_offset_;
    std::vector<std::uint64_t> power_;
    std::string persist_dir_;
    mutable std::mutex mu_;
    mutable std::map<int, std::unique_ptr<Component>> components_;
};

/// Shared quotients keyed by (presentation fingerprint, d). Insertions are
/// serialized; returned quotients are safe to use concurrently.
class QuotientCache {
public:
    static QuotientCache& global();

    std::shared_ptr<const TruncatedQuotient> get(const Presentation& p, int d);
    void set_persist_dir(std::string dir);
    void clear();

private:
    std::mutex mu_;
    std::map<std::pair<std::string, int>, std::shared_ptr<TruncatedQuotient>> entries_;
    std::string persist_dir_;
};

Subspace ideal_component(const Presentation& p, int d);
std::vector<Word> quotient_basis(const Presentation& p, int d);
FreeElement normal_form(const TruncatedQuotient& q, const FreeElement& x);
Certification is_zero_mod(const TruncatedQuotient& q, const FreeElement& x);

struct StabilizationProbe {
    int d = 0;
    /// quotient words of degree <= d-2 at truncation d-2 and at truncation d
    std::size_t low_basis_at_lower = 0;
    std::size_t low_basis_at_d = 0;
    bool stable() const { return low_basis_at_lower == low_basis_at_d; }
};

/// Compares the degree <= d-2 part of the quotient basis at truncations d-2
/// and d. Requires d-2 >= max relation degree. If `weight` is given only
/// that graded component is compared.
StabilizationProbe stabilization_probe(const Presentation& p, int d, std::optional<int> weight = {});

} // namespace freefft
