#ifndef GPDKIT_ERROR_HPP
#define GPDKIT_ERROR_HPP

#include <stdexcept>
#include <string>
#include <string_view>

namespace gpdkit {

enum class errc {
  not_composable,
  unknown_object,
  unknown_point,
  unknown_arrow,
  invalid_morphism,
  empty_not_allowed,
  invalid_topology,
  invalid_group,
  ill_formed_word,
  partial_map,
  not_local_morphism,
  not_free,
  invalid_presentation_morphism,
  not_connected,
  wrong_shape,
  not_confluent,
  out_of_domain,
  not_sectionable,
  not_finite_on_instance,
  too_small,
  well_definedness_failure,
  not_a_crossed_module,
  not_special_double,
  not_a_cube,
  invalid_local_data,
  parse_error,
};

inline std::string_view errc_name(errc e) {
  switch (e) {
    case errc::not_composable: return "NotComposable";
    case errc::unknown_object: return "UnknownObject";
    case errc::unknown_point: return "UnknownPoint";
    case errc::unknown_arrow: return "UnknownArrow";
    case errc::invalid_morphism: return "InvalidMorphism";
    case errc::empty_not_allowed: return "EmptyNotAllowed";
    case errc::invalid_topology: return "InvalidTopology";
    case errc::invalid_group: return "InvalidGroup";
    case errc::ill_formed_word: return "IllFormedWord";
    case errc::partial_map: return "PartialMap";
    case errc::not_local_morphism: return "NotLocalMorphism";
    case errc::not_free: return "NotFree";
    case errc::invalid_presentation_morphism: return "InvalidPresentationMorphism";
    case errc::not_connected: return "NotConnected";
    case errc::wrong_shape: return "WrongShape";
    case errc::not_confluent: return "NotConfluent";
    case errc::out_of_domain: return "OutOfDomain";
    case errc::not_sectionable: return "NotSectionable";
    case errc::not_finite_on_instance: return "NotFiniteOnInstance";
    case errc::too_small: return "TooSmall";
    case errc::well_definedness_failure: return "WellDefinednessFailure";
    case errc::not_a_crossed_module: return "NotACrossedModule";
    case errc::not_special_double: return "NotSpecialDouble";
    case errc::not_a_cube: return "NotACube";
    case errc::invalid_local_data: return "InvalidLocalData";
    case errc::parse_error: return "ParseError";
  }
  return "Unknown";
}

/// Every failure raised by the library carries one of the codes above.
class error : public std::runtime_error {
 public:
  error(errc code, const std::string& what)
      : std::runtime_error(std::string(errc_name(code)) + ": " + what), code_(code) {}

  errc code() const noexcept { return code_; }

 private:
  errc code_;
};

}  // namespace gpdkit

#endif  // GPDKIT_ERROR_HPP
