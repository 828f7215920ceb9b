#include "flatctc/groups.hpp"

#include <cmath>
#include <cstdio>
#include <stdexcept>
#include <unordered_set>

#include "flatctc/errors.hpp"

namespace flatctc {

void GroupPresentation::validate() const {
    if (generators.empty()) throw std::invalid_argument("group presentation has no generators");
}

bool Word::reduced() const noexcept {
    for (std::size_t i = 1; i < letters_.size(); ++i) {
        if (letters_[i].generator == letters_[i - 1].generator && letters_[i].exponent == -letters_[i - 1].exponent) {
            return false;
        }
    }
    return true;
}

std::vector<int> Word::signed_indices() const {
    std::vector<int> out;
    out.reserve(letters_.size());
    for (const Letter& l : letters_) out.push_back(l.exponent * (l.generator + 1));
    return out;
}

Word Word::from_signed_indices(const std::vector<int>& indices) {
    std::vector<Letter> letters;
    letters.reserve(indices.size());
    for (int i : indices) {
        if (i == 0) throw std::invalid_argument("word index 0 is not a generator");
        letters.push_back(Letter{(i > 0 ? i : -i) - 1, i > 0 ? 1 : -1});
    }
    return Word(std::move(letters));
}

std::string Word::to_string(const GroupPresentation* names) const {
    std::string out;
    for (std::size_t i = 0; i < letters_.size(); ++i) {
        const Letter& l = letters_[i];
        if (i > 0) out += '*';
        std::string name;
        if (names != nullptr && l.generator < static_cast<int>(names->generators.size()) &&
            !names->generators[l.generator].name.empty()) {
            name = names->generators[l.generator].name;
        } else {
            name = "g" + std::to_string(l.generator + 1);
        }
        out += name;
        if (l.exponent < 0) out += "^-1";
    }
    return out;
}

Isometry Word::evaluate(const GroupPresentation& group) const {
    Isometry acc = Isometry::identity();
    for (const Letter& l : letters_) {
        if (l.generator < 0 || l.generator >= static_cast<int>(group.generators.size())) {
            throw std::out_of_range("word refers to a missing generator");
        }
        const Isometry& g = group.generators[l.generator].element;
        acc = compose(acc, l.exponent > 0 ? g : inverse(g));
    }
    return acc;
}

namespace {

std::string element_key(const Isometry& g) {
    std::string key;
    key.reserve(12 * 24);
    char buf[32];
    const auto put = [&](double x) {
        if (std::abs(x) < 5e-13) x = 0.0;
        std::snprintf(buf, sizeof buf, "%.11e;", x);
        key += buf;
    };
    for (double x : g.linear().a) put(x);
    for (int i = 0; i < 3; ++i) put(g.translation()[i]);
    return key;
}

}  // namespace

void for_each_word(const GroupPresentation& group, int max_len,
                   const std::function<bool(const WordElement&)>& visit) {
    group.validate();
    if (max_len < 1) throw std::invalid_argument("max_len must be >= 1");

    const int gens = static_cast<int>(group.generators.size());
    std::vector<Letter> alphabet;
    std::vector<Isometry> letter_elements;
    for (int i = 0; i < gens; ++i) {
        alphabet.push_back(Letter{i, 1});
        letter_elements.push_back(group.generators[i].element);
        alphabet.push_back(Letter{i, -1});
        letter_elements.push_back(inverse(group.generators[i].element));
    }

    std::unordered_set<std::string> seen;
    if (!group.assume_free) seen.insert(element_key(Isometry::identity()));

    std::vector<WordElement> level{WordElement{Word(), Isometry::identity()}};
    for (int len = 1; len <= max_len; ++len) {
        std::vector<WordElement> next;
        for (const WordElement& prefix : level) {
            const auto& letters = prefix.word.letters();
            for (std::size_t a = 0; a < alphabet.size(); ++a) {
                const Letter l = alphabet[a];
                if (!letters.empty() && letters.back().generator == l.generator &&
                    letters.back().exponent == -l.exponent) {
                    continue;
                }
                std::vector<Letter> extended = letters;
                extended.push_back(l);
                WordElement we{Word(std::move(extended)), compose(prefix.element, letter_elements[a])};
                if (!group.assume_free && !seen.insert(element_key(we.element)).second) continue;
                if (!visit(we)) return;
                if (len < max_len) next.push_back(std::move(we));
            }
        }
        level = std::move(next);
    }
}

std::vector<WordElement> enumerate_words(const GroupPresentation& group, int max_len) {
    std::vector<WordElement> out;
    for_each_word(group, max_len, [&](const WordElement& we) {
        out.push_back(we);
        return true;
    });
    return out;
}

long free_word_count(int g, int max_len) noexcept {
    long total = 0;
    long level = 2L * g;
    for (int l = 1; l <= max_len; ++l) {
        total += level;
        level *= 2L * g - 1;
    }
    return total;
}

std::optional<CtcWitness> CtcWitness::verify(Word word, long power, const Isometry& element, const MPoint& point,
                                             double tol) {
    if (power == 0) return std::nullopt;
    if (region_of(element, point, power, tol).region != Region::T) return std::nullopt;
    CtcWitness w;
    w.word_ = std::move(word);
    w.power_ = power;
    w.element_ = element;
    w.point_ = point;
    w.displacement_ = flatctc::displacement(flatctc::power(element, power), point);
    return w;
}

std::string CtcWitness::to_string(const GroupPresentation* names) const {
    const std::string w = word_.to_string(names);
    const std::string n = std::to_string(power_);
    if (word_.length() == 1) return w + "^" + n;
    return "(" + w + ")^" + n;
}

WordTester::WordTester(const Isometry& element) : element_(element), class_(classify(element)) {
    if (class_.kind == IsometryKind::Hyperbolic) hyperbolic_.emplace(element);
}

std::optional<long> WordTester::min_timelike_power(const MPoint& p, long max_power) const {
    switch (class_.kind) {
        case IsometryKind::Hyperbolic:
            return hyperbolic_->min_timelike_power(p, max_power);
        case IsometryKind::Parabolic: {
            if (class_.has_fixed_point) return std::nullopt;
            const long n = parabolic_witness(element_, p).power;
            return n <= max_power ? std::optional<long>(n) : std::nullopt;
        }
        case IsometryKind::Elliptic:
            if (class_.has_fixed_point) return std::nullopt;
            try {
                return elliptic_min_timelike_power(element_, p, max_power);
            } catch (const WitnessBoundExceededError&) {
                return std::nullopt;
            }
        case IsometryKind::Identity:
            break;
    }
    // Pure translations: the displacement does not depend on p and scales
    // with n, so the first power decides.
    if (region_of(element_, p, 1).region == Region::T) return 1L;
    return std::nullopt;
}

std::optional<CtcWitness> group_ctc_search(const std::vector<WordElement>& words,
                                           const std::vector<WordTester>& testers, const MPoint& p,
                                           long max_power) {
    if (words.size() != testers.size()) throw std::invalid_argument("word and tester lists differ in size");
    for (std::size_t i = 0; i < words.size(); ++i) {
        const auto n = testers[i].min_timelike_power(p, max_power);
        if (!n) continue;
        if (auto w = CtcWitness::verify(words[i].word, *n, words[i].element, p)) return w;
    }
    return std::nullopt;
}

std::optional<CtcWitness> group_ctc_search(const GroupPresentation& group, const MPoint& p, int max_len,
                                           long max_power) {
    if (max_power < 1) throw std::invalid_argument("max_power must be >= 1");
    std::optional<CtcWitness> found;
    for_each_word(group, max_len, [&](const WordElement& we) {
        const auto n = WordTester(we.element).min_timelike_power(p, max_power);
        if (n) found = CtcWitness::verify(we.word, *n, we.element, p);
        return !found.has_value();
    });
    return found;
}

InvariantLine conjugate_invariant_line(const Isometry& gi, const Isometry& gj) {
    const InvariantLine cj = invariant_line(gj);
    const InvariantLine direct = invariant_line(conjugate(gj, gi));
    const InvariantLine mapped{gi(cj.base), gi.linear() * cj.direction};
    const double scale = 1.0 + direct.base.from_origin().norm() + mapped.base.from_origin().norm();
    if (line_distance(direct, mapped) > 1e-9 * scale) {
        throw std::logic_error("conjugate_invariant_line: direct and mapped lines disagree");
    }
    return direct;
}

GroupPresentation torus_example() {
    const double r5 = std::sqrt(5.0);
    const Mat3 g1{{1, 0, 0, 0, 1.5, -r5 / 2.0, 0, -r5 / 2.0, 1.5}};
    const Mat3 g2{{1, 0, 0, 0, 3.5, -3.0 * r5 / 2.0, 0, -3.0 * r5 / 2.0, 3.5}};
    GroupPresentation out;
    out.generators.push_back({"g1", Isometry(g1, MVec(1, 0, 0))});
    out.generators.push_back({"g2", Isometry(g2, MVec(2, 1.0 / r5, 1))});
    return out;
}

}  // namespace flatctc
