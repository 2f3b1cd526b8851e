#pragma once

namespace dbr {

inline constexpr const char* library_name = "dbr";
inline constexpr const char* library_version = "1.0.0";

}  // namespace dbr
