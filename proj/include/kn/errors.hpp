#ifndef KN_ERRORS_HPP
#define KN_ERRORS_HPP

#include <stdexcept>
#include <string>

namespace kn {

/// Reasons an input fan, polytope, or complex can be rejected.
enum class ValidationKind {
    VertexOutOfRange,
    NonSimplicialCone,
    BadIntersection,
    ContainsLine,
    RaysDoNotSpan,
    Unbounded,
    NotFullDimensional,
    RedundantInequality,
    EmptyPolytope,
    NonPrimitiveRow,
    NotSimple,
    BadInput,
};

class validation_error : public std::runtime_error {
  public:
    validation_error(ValidationKind kind, const std::string& what, int index = -1)
        : std::runtime_error(what), kind_(kind), index_(index) {}

    ValidationKind kind() const { return kind_; }

    /// 1-based index of the offending row/cone, or -1 when not applicable.
    int index() const { return index_; }

  private:
    ValidationKind kind_;
    int index_;
};

} // namespace kn

#endif // KN_ERRORS_HPP
