#pragma once

#include "gjr/experiment.hpp"
#include "gjr/samplers.hpp"

#include <filesystem>
#include <iosfwd>
#include <map>
#include <string>

namespace gjr {

/// Flat `key=value` configuration. Blank lines and lines starting with `#`
/// are ignored. Keys outside `known_keys()` are rejected with ConfigError as
/// soon as they are seen; later `set` calls override earlier values.
class ConfigMap {
public:
    void set(const std::string& key, const std::string& value);
    /// Parses `key=value`.
    void set_assignment(const std::string& assignment);

    void load(std::istream& in, const std::string& source = "<config>");
    void load(const std::filesystem::path& path);

    [[nodiscard]] bool has(const std::string& key) const { return values_.count(key) != 0; }
    [[nodiscard]] const std::string& get(const std::string& key) const;
    [[nodiscard]] const std::map<std::string, std::string>& values() const noexcept {
        return values_;
    }

    [[nodiscard]] static bool is_known(const std::string& key);

private:
    std::map<std::string, std::string> values_;
};

/// Overlays the sampler keys present in `config` onto `base`.
[[nodiscard]] AdaptiveConfig apply_config(AdaptiveConfig base, const ConfigMap& config);

/// Overlays sampler and experiment keys onto `base`.
[[nodiscard]] ExperimentSpec apply_config(ExperimentSpec base, const ConfigMap& config);

/// Whether `auto_tune` is set to a true value.
[[nodiscard]] bool auto_tune_requested(const ConfigMap& config);

}  // namespace gjr
