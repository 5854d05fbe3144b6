#ifndef MTROOT_ERRORS_HPP_
#define MTROOT_ERRORS_HPP_

#include <stdexcept>
#include <string>

namespace mtroot {

enum class errc {
  // polynomial layer
  not_monic,
  functional_equation_fails,
  weil_bound_fails,
  zero_polynomial,
  vanishes_mod_prime,
  // p-adic layer
  no_suitable_aux_prime,
  pairing_fails,
  derivative_not_unit,
  precision_exhausted,
  // point counting
  bad_reduction,
  enumeration_too_large,
  weil_validation_fails,
  // lattice of relations
  no_valid_partition,
  not_ordinary,
  slope_assignment_ambiguous,
  // Galois
  roots_collide_mod_l,
  ambiguous_descent,
  polynomials_not_coprime,
  // root recovery
  minuscule_violated,
  unclassifiable_component,
  orbit_size_collision,
  no_reflection_found,
  multiple_reflections,
  axiom_violation,
  weyl_mismatch,
  not_a_subgroup,
  q_class_not_primitive,
  multiplicity_not_orbit_constant,
  // Hodge integrals
  k_out_of_range,
  inexact_division,
  // pipeline
  no_torsion_free_prime,
  rank_mismatch,
  bad_input,
  internal,
};

inline const char* errc_name(errc c) {
  switch (c) {
    case errc::not_monic: return "NotMonic";
    case errc::functional_equation_fails: return "FunctionalEquationFails";
    case errc::weil_bound_fails: return "WeilBoundFails";
    case errc::zero_polynomial: return "ZeroPolynomial";
    case errc::vanishes_mod_prime: return "VanishesModPrime";
    case errc::no_suitable_aux_prime: return "NoSuitableAuxPrime";
    case errc::pairing_fails: return "PairingFails";
    case errc::derivative_not_unit: return "DerivativeNotUnit";
    case errc::precision_exhausted: return "PrecisionExhausted";
    case errc::bad_reduction: return "BadReduction";
    case errc::enumeration_too_large: return "EnumerationTooLarge";
    case errc::weil_validation_fails: return "WeilValidationFails";
    case errc::no_valid_partition: return "NoValidPartition";
    case errc::not_ordinary: return "NotOrdinary";
    case errc::slope_assignment_ambiguous: return "SlopeAssignmentAmbiguous";
    case errc::roots_collide_mod_l: return "RootsCollideModL";
    case errc::ambiguous_descent: return "AmbiguousDescent";
    case errc::polynomials_not_coprime: return "PolynomialsNotCoprime";
    case errc::minuscule_violated: return "MinusculeViolated";
    case errc::unclassifiable_component: return "UnclassifiableComponent";
    case errc::orbit_size_collision: return "OrbitSizeCollision";
    case errc::no_reflection_found: return "NoReflectionFound";
    case errc::multiple_reflections: return "MultipleReflections";
    case errc::axiom_violation: return "AxiomViolation";
    case errc::weyl_mismatch: return "WeylMismatch";
    case errc::not_a_subgroup: return "NotASubgroup";
    case errc::q_class_not_primitive: return "QClassNotPrimitive";
    case errc::multiplicity_not_orbit_constant: return "MultiplicityNotOrbitConstant";
    case errc::k_out_of_range: return "KOutOfRange";
    case errc::inexact_division: return "InexactDivision";
    case errc::no_torsion_free_prime: return "NoTorsionFreePrime";
    case errc::rank_mismatch: return "RankMismatch";
    case errc::bad_input: return "BadInput";
    case errc::internal: return "InternalError";
  }
  return "UnknownError";
}

class error : public std::runtime_error {
 public:
  error(errc c, const std::string& what)
      : std::runtime_error(std::string(errc_name(c)) + ": " + what), code_(c) {}
  errc code() const { return code_; }

 private:
  errc code_;
};

[[noreturn]] inline void fail(errc c, const std::string& what) { throw error(c, what); }

inline void check(bool ok, errc c, const std::string& what) {
  if (!ok) fail(c, what);
}

}  // namespace mtroot

#endif
