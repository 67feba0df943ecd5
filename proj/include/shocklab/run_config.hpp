#pragma once

#include <filesystem>
#include <map>
#include <string>
#include <vector>

#include "shocklab/data_builder.hpp"
#include "shocklab/optical_geometry.hpp"
#include "shocklab/radial_solver.hpp"
#include "shocklab/seed_profiles.hpp"

namespace shocklab {

/// Flat section.key configuration with typed accessors.
///
/// Every key has a default; unknown keys are rejected so that typos do not pass silently.
class RunConfig {
 public:
  RunConfig();

  /// Reads an INI file; keys are section.name.
  static RunConfig from_ini(const std::filesystem::path& path);

  /// Applies "section.key=value".
  void set(const std::string& assignment);
  void set(const std::string& key, const std::string& value);

  std::string get(const std::string& key) const;
  double number(const std::string& key) const;
  int integer(const std::string& key) const;
  std::vector<double> number_list(const std::string& key) const;
  bool has_value(const std::string& key) const { return !get(key).empty(); }

  const std::map<std::string, std::string>& values() const { return values_; }

  ModelParams model() const;
  SeedProfile seed() const;  ///< applies seed.target_margin when set
  GridSpec grid() const;
  SolverOptions solver() const;
  FanOptions fan() const;
  EvolveOptions evolve() const;

 private:
  std::map<std::string, std::string> values_;
};

}  // namespace shocklab
