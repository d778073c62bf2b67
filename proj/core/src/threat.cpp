#include "draco/threat.hpp"

#include <algorithm>
#include <numeric>

#include "draco/errors.hpp"

namespace draco {

void AttackSpec::validate(std::size_t node_count) const {
    if (count > node_count) throw InvalidSpec("attack count exceeds node count");
    if (kind == AttackKind::ReverseGradient && reverse_scale <= 0.0) {
        throw InvalidSpec("reverse-gradient scale c must be positive");
    }
    if (selection == AdversarySelection::FixedSet) {
        if (fixed_set.size() != count) throw InvalidSpec("fixed adversary set size != count");
        for (std::size_t v : fixed_set) {
            if (v >= node_count) throw InvalidSpec("fixed adversary index out of range");
        }
    }
    if (kind == AttackKind::Custom && !custom_real && !custom_complex) {
        throw InvalidSpec("custom attack needs a corruption function");
    }
}

std::vector<std::size_t> select_adversaries(const AttackSpec& spec, std::size_t node_count,
                                            Rng& rng) {
    spec.validate(node_count);
    if (spec.count == 0) return {};
    if (spec.selection == AdversarySelection::FixedSet) {
        auto set = spec.fixed_set;
        std::sort(set.begin(), set.end());
        return set;
    }
    // Partial Fisher-Yates: first `count` positions of a shuffle.
    std::vector<std::size_t> pool(node_count);
    std::iota(pool.begin(), pool.end(), std::size_t{0});
    for (std::size_t i = 0; i < spec.count; ++i) {
        std::uniform_int_distribution<std::size_t> pick(i, node_count - 1);
        std::swap(pool[i], pool[pick(rng)]);
    }
    std::vector<std::size_t> chosen(pool.begin(), pool.begin() + static_cast<std::ptrdiff_t>(spec.count));
    std::sort(chosen.begin(), chosen.end());
    return chosen;
}

std::vector<double> corrupt(std::size_t node, const std::vector<double>& honest,
                            const AttackSpec& spec) {
    switch (spec.kind) {
        case AttackKind::None:
            return honest;
        case AttackKind::ReverseGradient: {
            std::vector<double> out(honest.size());
            for (std::size_t i = 0; i < honest.size(); ++i) out[i] = -spec.reverse_scale * honest[i];
            return out;
        }
        case AttackKind::Constant:
            return std::vector<double>(honest.size(), spec.constant_value);
        case AttackKind::Custom: {
            if (!spec.custom_real) throw InvalidSpec("custom attack lacks a real corruption");
            auto out = spec.custom_real(node, honest);
            if (out.size() != honest.size()) {
                throw InvalidSpec("custom corruption changed the message dimension");
            }
            return out;
        }
    }
    throw InvalidSpec("corrupt: unknown attack kind");
}

ComplexVector corrupt(std::size_t node, const ComplexVector& honest, const AttackSpec& spec) {
    switch (spec.kind) {
        case AttackKind::None:
            return honest;
        case AttackKind::ReverseGradient: {
            ComplexVector out(honest.size());
            for (std::size_t i = 0; i < honest.size(); ++i) out[i] = -spec.reverse_scale * honest[i];
            return out;
        }
        case AttackKind::Constant:
            return ComplexVector(honest.size(), Complex{spec.constant_value, 0.0});
        case AttackKind::Custom: {
            if (!spec.custom_complex) throw InvalidSpec("custom attack lacks a complex corruption");
            auto out = spec.custom_complex(node, honest);
            if (out.size() != honest.size()) {
                throw InvalidSpec("custom corruption changed the message dimension");
            }
            return out;
        }
    }
    throw InvalidSpec("corrupt: unknown attack kind");
}

}  // namespace draco
