#pragma once

#include <array>
#include <optional>
#include <string>
#include <string_view>

namespace lawnsec {

using Vec3 = std::array<double, 3>;

/// First-come-first-serve queue model used for the sensing-data age.
enum class QueueModel { MM1, DM1, MD1 };

std::string_view to_string(QueueModel m) noexcept;
std::optional<QueueModel> parse_queue_model(std::string_view s) noexcept;

}  // namespace lawnsec
