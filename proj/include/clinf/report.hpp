#pragma once

// Rendering of a Report as plain text or as a `clinf-report/1` JSON document.

#include <string>

#include "clinf/runner.hpp"

namespace clinf {

std::string render_text(const Report& report);
std::string render_json(const Report& report);

}  // namespace clinf
