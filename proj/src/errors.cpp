#include "quasiform/errors.hpp"

namespace qf
{

std::string_view to_string(ErrorCode code) noexcept
{
    switch (code) {
    case ErrorCode::division_by_zero: return "DivisionByZero";
    case ErrorCode::unknown_variable: return "UnknownVariable";
    case ErrorCode::exponent_overflow: return "ExponentOverflow";
    case ErrorCode::name_collision: return "NameCollision";
    case ErrorCode::is_square: return "IsSquare";
    case ErrorCode::zero_element: return "ZeroElement";
    case ErrorCode::tower_mismatch: return "TowerMismatch";
    case ErrorCode::tower_depth_exceeded: return "TowerDepthExceeded";
    case ErrorCode::zero_generator: return "ZeroGenerator";
    case ErrorCode::zero_coefficient: return "ZeroCoefficient";
    case ErrorCode::dimension_mismatch: return "DimensionMismatch";
    case ErrorCode::not_anisotropic: return "NotAnisotropic";
    case ErrorCode::norm_field_not_a_field: return "NormFieldNotAField";
    case ErrorCode::bad_codimension: return "BadCodimension";
    case ErrorCode::isotropic_input: return "IsotropicInput";
    case ErrorCode::dimension_too_small: return "DimensionTooSmall";
    case ErrorCode::embedding_failure: return "EmbeddingFailure";
    case ErrorCode::zero_slot: return "ZeroSlot";
    case ErrorCode::index_mismatch: return "IndexMismatch";
    case ErrorCode::bad_decomposition: return "BadDecomposition";
    case ErrorCode::not_ruled: return "NotRuled";
    case ErrorCode::inconsistency_detected: return "InconsistencyDetected";
    case ErrorCode::syntax_error: return "SyntaxError";
    case ErrorCode::undeclared_variable: return "UndeclaredVariable";
    case ErrorCode::undefined_form: return "UndefinedForm";
    case ErrorCode::timeout: return "Timeout";
    }
    return "Unknown";
}

ErrorClass error_class(ErrorCode code) noexcept
{
    switch (code) {
    case ErrorCode::exponent_overflow:
    case ErrorCode::tower_depth_exceeded:
    case ErrorCode::timeout:
        return ErrorClass::resource;
    case ErrorCode::inconsistency_detected:
        return ErrorClass::internal;
    case ErrorCode::not_ruled:
    case ErrorCode::norm_field_not_a_field:
        return ErrorClass::math;
    default:
        return ErrorClass::input;
    }
}

} // namespace qf
