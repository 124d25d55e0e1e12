#ifndef QUASIFORM_SCRIPT_HPP
#define QUASIFORM_SCRIPT_HPP

#include <string>
#include <string_view>
#include <vector>

#include "quasiform/quasiform.hpp"

namespace qf::cli
{

enum class CommandKind { invariants, compare, ruling, regular, splitting, corpus };

std::string_view to_string(CommandKind kind) noexcept;

struct Command {
    CommandKind kind;
    std::vector<std::string> forms;
    std::size_t line = 0;
};

struct FormDefinition {
    std::string name;
    QuasilinearForm form;
};

/// field F2(a,b,c);
/// form q = <1, a, b, a*b, c>;
/// invariants q; compare q r; ruling q; regular q; splitting q; corpus;
struct Script {
    std::vector<std::string> variables;
    /// Null until a field declaration is seen.
    TowerPtr field;
    std::vector<FormDefinition> forms;
    std::vector<Command> commands;

    const FormDefinition *find_form(std::string_view name) const;
};

/// Throws SyntaxError (with line and column), ZeroCoefficient,
/// UndeclaredVariable, UndefinedForm.
Script parse_script(std::string_view text, std::size_t max_tower_depth = default_max_tower_depth);

std::string print_script(const Script &script);

} // namespace qf::cli

#endif
