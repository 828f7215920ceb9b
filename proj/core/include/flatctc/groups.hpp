#pragma once

// Finitely generated subgroups of the Poincare group and CTC witness search
// over their reduced words.

#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "flatctc/isometry.hpp"
#include "flatctc/regions.hpp"

namespace flatctc {

struct NamedIsometry {
    std::string name;
    Isometry element;
};

struct GroupPresentation {
    std::vector<NamedIsometry> generators;
    /// Treat the generators as a free basis: no deduplication of equal
    /// elements reached by different words.
    bool assume_free = false;

    /// Throws std::invalid_argument if there are no generators.
    void validate() const;
};

struct Letter {
    int generator = 0;  ///< zero-based index
    int exponent = 1;   ///< +1 or -1

    friend bool operator==(const Letter&, const Letter&) = default;
};

class Word {
public:
    Word() = default;
    explicit Word(std::vector<Letter> letters) : letters_(std::move(letters)) {}

    const std::vector<Letter>& letters() const noexcept { return letters_; }
    std::size_t length() const noexcept { return letters_.size(); }
    bool reduced() const noexcept;

    /// One-based signed generator indices, e.g. g1 g2^-1 -> {1, -2}.
    std::vector<int> signed_indices() const;
    static Word from_signed_indices(const std::vector<int>& indices);
    /// "g1*g2^-1" using the presentation's names (or g1, g2, ... if absent).
    std::string to_string(const GroupPresentation* names = nullptr) const;
    /// The element w = a1 a2 ... ak, acting as a1(a2(...ak(p))).
    Isometry evaluate(const GroupPresentation& group) const;

    friend bool operator==(const Word&, const Word&) = default;

private:
    std::vector<Letter> letters_;
};

struct WordElement {
    Word word;
    Isometry element;
};

/// Streams every reduced word of length 1..max_len in length-then-
/// lexicographic order, letters ordered g1 < g1^-1 < g2 < g2^-1 < ...
/// Unless assume_free is set, words whose element (rounded to 12 decimal
/// digits) repeats an earlier one or the identity are skipped. The visitor
/// returns false to stop early.
void for_each_word(const GroupPresentation& group, int max_len,
                   const std::function<bool(const WordElement&)>& visit);

std::vector<WordElement> enumerate_words(const GroupPresentation& group, int max_len);

/// Number of reduced words of length 1..max_len in a free group of rank g.
long free_word_count(int g, int max_len) noexcept;

class CtcWitness {
public:
    /// Re-evaluates region_of(element, point, power); nullopt unless it is T.
    static std::optional<CtcWitness> verify(Word word, long power, const Isometry& element, const MPoint& point,
                                            double tol = kDefaultTol);

    const Word& word() const noexcept { return word_; }
    long power() const noexcept { return power_; }
    const Isometry& element() const noexcept { return element_; }
    const MPoint& point() const noexcept { return point_; }
    const MVec& displacement() const noexcept { return displacement_; }
    double b_value() const noexcept { return lorentz_square(displacement_); }

    /// "g1^1" for a single letter, "(g1*g2*g1^-1)^3" otherwise.
    std::string to_string(const GroupPresentation* names = nullptr) const;

private:
    CtcWitness() = default;
    Word word_;
    long power_ = 1;
    Isometry element_;
    MPoint point_;
    MVec displacement_;
};

/// Per-element strategy for the least timelike power: closed forms for
/// hyperbolic, parabolic and elliptic elements, direct scan otherwise.
class WordTester {
public:
    explicit WordTester(const Isometry& element);
    std::optional<long> min_timelike_power(const MPoint& p, long max_power) const;
    const Isometry& element() const noexcept { return element_; }

private:
    Isometry element_;
    IsometryClass class_;
    std::optional<HyperbolicRegionData> hyperbolic_;
};

/// First witness in enumeration order (words by length then lexicographic,
/// powers ascending inside each word); nullopt if the bounds are exhausted.
std::optional<CtcWitness> group_ctc_search(const GroupPresentation& group, const MPoint& p, int max_len,
                                           long max_power);

/// Same search against a precomputed word list.
std::optional<CtcWitness> group_ctc_search(const std::vector<WordElement>& words,
                                           const std::vector<WordTester>& testers, const MPoint& p,
                                           long max_power);

/// Invariant line of gi gj gi^-1, computed directly and as gi(C_gj). Throws
/// NotHyperbolicError, and std::logic_error if the two disagree beyond 1e-9.
InvariantLine conjugate_invariant_line(const Isometry& gi, const Isometry& gj);

/// Two hyperbolic generators g1, g2 with a common eigenframe and distinct
/// invariant lines, both parallel to (1, 0, 0). Every point of E lies in the
/// timelike region of some element. That the group acts freely and properly
/// discontinuously is assumed, not checked.
GroupPresentation torus_example();

}  // namespace flatctc
