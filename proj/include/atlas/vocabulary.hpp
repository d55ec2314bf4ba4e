#pragma once

#include <span>
#include <string>
#include <string_view>

namespace atlas {

/// The 80 object classes the detector knows, in canonical form.
std::span<const std::string_view> detector_classes();
bool is_detector_class(std::string_view name);

/// Place names used to vary generated system headers.
std::span<const std::string_view> default_landmark_names();

}  // namespace atlas
