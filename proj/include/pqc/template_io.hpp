#pragma once

#include <filesystem>
#include <string>
#include <string_view>
#include <vector>

#include "pqc/circuit.hpp"

namespace pqc {

/// Reads one template document.
///
/// Header lines are `key: value` with keys id, description, connectivity,
/// sampler, min-width, max-width. Gate lines follow a `prologue:` or
/// `layer:` marker and read
///
///     [for <var> in <expr>..<expr>]* <KIND> <expr>[, <expr>] [param | angle <x>...]
///
/// Loop ranges are half-open. Expressions may use n, enclosing loop
/// variables, integer literals, + - * / mod and gcd/min/max.
///
/// Throws TemplateError carrying the line and column of the first problem.
CircuitTemplate parse_template_file(std::string_view text);

std::string serialize_template(const CircuitTemplate& tmpl);

/// Every `*.pqc` file in `dir`, ordered like the built-in catalog.
std::vector<CircuitTemplate> load_template_dir(const std::filesystem::path& dir);

/// Catalog ordering: benchmark ids first, then single-qubit templates, then
/// the rest, each group sorted by id.
void sort_catalog(std::vector<CircuitTemplate>& templates);

}  // namespace pqc
