#ifndef QUASIFORM_ERRORS_HPP
#define QUASIFORM_ERRORS_HPP

#include <stdexcept>
#include <string>
#include <string_view>

namespace qf
{

/// Broad classes used by the command-line front end to pick an exit code.
enum class ErrorClass { input, math, resource, internal };

enum class ErrorCode {
    // gf2poly
    division_by_zero,
    unknown_variable,
    exponent_overflow,
    // fieldtower
    name_collision,
    is_square,
    zero_element,
    tower_mismatch,
    tower_depth_exceeded,
    // sqlinalg
    zero_generator,
    // quasiform
    zero_coefficient,
    dimension_mismatch,
    not_anisotropic,
    norm_field_not_a_field,
    bad_codimension,
    // splitting
    isotropic_input,
    dimension_too_small,
    embedding_failure,
    // pfister
    zero_slot,
    index_mismatch,
    bad_decomposition,
    // birational
    not_ruled,
    inconsistency_detected,
    // cli
    syntax_error,
    undeclared_variable,
    undefined_form,
    timeout,
};

std::string_view to_string(ErrorCode code) noexcept;
ErrorClass error_class(ErrorCode code) noexcept;

class Error : public std::runtime_error
{
public:
    Error(ErrorCode code, const std::string &what) : std::runtime_error(what), code_(code) {}

    ErrorCode code() const noexcept
    {
        return code_;
    }

private:
    ErrorCode code_;
};

template <ErrorCode Code>
class CodedError : public Error
{
public:
    explicit CodedError(const std::string &what) : Error(Code, what) {}
};

using DivisionByZero = CodedError<ErrorCode::division_by_zero>;
using UnknownVariable = CodedError<ErrorCode::unknown_variable>;
using ExponentOverflow = CodedError<ErrorCode::exponent_overflow>;
using NameCollision = CodedError<ErrorCode::name_collision>;
using IsSquare = CodedError<ErrorCode::is_square>;
using ZeroElement = CodedError<ErrorCode::zero_element>;
using TowerMismatch = CodedError<ErrorCode::tower_mismatch>;
using TowerDepthExceeded = CodedError<ErrorCode::tower_depth_exceeded>;
using ZeroGenerator = CodedError<ErrorCode::zero_generator>;
using ZeroCoefficient = CodedError<ErrorCode::zero_coefficient>;
using DimensionMismatch = CodedError<ErrorCode::dimension_mismatch>;
using NotAnisotropic = CodedError<ErrorCode::not_anisotropic>;
using NormFieldNotAField = CodedError<ErrorCode::norm_field_not_a_field>;
using BadCodimension = CodedError<ErrorCode::bad_codimension>;
using IsotropicInput = CodedError<ErrorCode::isotropic_input>;
using DimensionTooSmall = CodedError<ErrorCode::dimension_too_small>;
using EmbeddingFailure = CodedError<ErrorCode::embedding_failure>;
using ZeroSlot = CodedError<ErrorCode::zero_slot>;
using IndexMismatch = CodedError<ErrorCode::index_mismatch>;
using BadDecomposition = CodedError<ErrorCode::bad_decomposition>;
using NotRuled = CodedError<ErrorCode::not_ruled>;
using InconsistencyDetected = CodedError<ErrorCode::inconsistency_detected>;
using SyntaxError = CodedError<ErrorCode::syntax_error>;
using UndeclaredVariable = CodedError<ErrorCode::undeclared_variable>;
using UndefinedForm = CodedError<ErrorCode::undefined_form>;
using Timeout = CodedError<ErrorCode::timeout>;

} // namespace qf

#endif
