#pragma once

#include <string_view>
#include <vector>

namespace pqc::detail {

/// Template documents compiled into the library from data/templates.
const std::vector<std::string_view>& embedded_templates();

}  // namespace pqc::detail
