#pragma once

#include <cstddef>
#include <functional>
#include <string>
#include <vector>

#include "draco/numerics.hpp"
#include "draco/rng.hpp"

namespace draco {

enum class AttackKind { None, ReverseGradient, Constant, Custom };
enum class AdversarySelection { UniformRandomPerRound, FixedSet };

// An adversary corrupts its outbound encoded message, never the raw
// gradients: an adversarial node sends z_j + n_j for an arbitrary n_j, and
// replacing the message realizes exactly that.
struct AttackSpec {
    AttackKind kind = AttackKind::None;
    double reverse_scale = 100.0;  // c in "send -c*g instead"
    double constant_value = -100.0;  // kappa, applied to every coordinate
    std::size_t count = 0;           // adversaries per round (s_actual)
    AdversarySelection selection = AdversarySelection::UniformRandomPerRound;
    std::vector<std::size_t> fixed_set;

    std::string custom_label;
    std::function<std::vector<double>(std::size_t node, const std::vector<double>& honest)>
        custom_real;
    std::function<ComplexVector(std::size_t node, const ComplexVector& honest)> custom_complex;

    void validate(std::size_t node_count) const;
};

// The round's adversary set: a uniformly random `count`-subset, or the fixed
// set. Deterministic given the rng state.
std::vector<std::size_t> select_adversaries(const AttackSpec& spec, std::size_t node_count,
                                            Rng& rng);

std::vector<double> corrupt(std::size_t node, const std::vector<double>& honest,
                            const AttackSpec& spec);
// Complex (cyclic) variant; the constant attack sets real parts to kappa and
// imaginary parts to zero.
ComplexVector corrupt(std::size_t node, const ComplexVector& honest, const AttackSpec& spec);

}  // namespace draco
