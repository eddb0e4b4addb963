#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "core/perm.hpp"
#include "core/tags.hpp"

namespace permstab {

enum class ClassId {
  Uniform,
  Grassmannian,
  GrassmannianModified,
  Boolean,
  Avoidance,
  CoGrassmannian,
  Fireworks,
  Smooth,
  Vexillary,
  CoVexillary,
  LeviSpherical,
};

struct ClassSpec {
  ClassId id = ClassId::Uniform;
  std::vector<Permutation> patterns;  // Avoidance only

  // "uniform", "grassmannian", "grassmannian-modified", "boolean", "av:231", "av:3412,4231",
  // "cograssmannian", "fireworks", "smooth", "vexillary", "covexillary", "levi-spherical".
  static ClassSpec parse(std::string_view name);
  static ClassSpec avoidance(std::vector<Permutation> patterns);
  std::string name() const;
  // True when closure under w -> w0 w w0 is guaranteed.
  bool conjugation_closed() const;
  // Pattern list when membership is pattern avoidance (smooth, vexillary, ... included).
  std::optional<std::vector<Permutation>> avoided_patterns() const;
};

struct GrassmannianDatum {
  int k = 0;
  std::vector<int> V;
  int M = 0;
};

Permutation grassmannian_build(int k, const std::vector<int>& V, int n);
// The datum with k = position of the unique descent (k = 0 for the identity).
std::optional<GrassmannianDatum> grassmannian_datum(const Permutation& w);
// Three-branch formula for Λ_i of a Grassmannian permutation.
int grassmannian_lambda(const GrassmannianDatum& d, int i);

bool is_grassmannian(const Permutation& w);
bool is_boolean(const Permutation& w);
bool is_fireworks(const Permutation& w);
bool is_levi_spherical(const Permutation& w);
Permutation levi_w0_of_inverse_descents(const Permutation& w);
bool is_class_member(const ClassSpec& spec, const Permutation& w);

struct EnumerationLimits {
  int generic = 10;
  int boolean = 12;
  int grassmannian = 20;
};

// Each member exactly once. GrassmannianModified enumerates the same set as Grassmannian.
void for_each_member(const ClassSpec& spec, int n, const std::function<void(const Permutation&)>& fn,
                     const EnumerationLimits& limits = {});
std::vector<Permutation> enumerate_class(const ClassSpec& spec, int n, const EnumerationLimits& limits = {});
std::uint64_t count_class(const ClassSpec& spec, int n, const EnumerationLimits& limits = {});

// Members with their weight under the class's natural law: 1 each, except
// GrassmannianModified where the identity carries weight n+1 (total 2^n).
void for_each_weighted_member(const ClassSpec& spec, int n,
                              const std::function<void(const Permutation&, std::uint64_t)>& fn,
                              const EnumerationLimits& limits = {});

// Permutations of size n avoiding all patterns, by prefix-pruned search.
void for_each_avoider(int n, const std::vector<Permutation>& patterns, const std::function<void(const Permutation&)>& fn);
void for_each_permutation(int n, const std::function<void(const Permutation&)>& fn);

}  // namespace permstab
