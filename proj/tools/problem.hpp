#pragma once

#include <map>
#include <optional>
#include <string>

#include "mcmlab/homology.hpp"

namespace mcmlab::cli {

/// [options] of a problem file; command-line flags take precedence.
struct Options {
  std::optional<long> level;
  std::optional<std::pair<long, long>> window;
  std::optional<std::size_t> cap_dim;
};

template <class K>
struct Problem {
  std::string path;
  RingPtr<K> ring;
  std::map<std::string, Module<K>> modules;
  std::map<std::string, FiltrationSpec<K>> filtrations;
  std::map<std::string, ShortExactSequence<K>> sequences;
  Options options;

  const Module<K>& module(const std::string& name) const;
  /// "madic" is always defined.
  const FiltrationSpec<K>& filtration(const std::string& name) const;
  const ShortExactSequence<K>& sequence(const std::string& name) const;
};

/// Field characteristic of the file, or the override.
std::uint32_t problem_field(const std::string& path, std::optional<std::uint32_t> field_override);

/// Parses and validates a problem file. Syntax and reference errors raise
/// InputError carrying file:line.
template <class K>
Problem<K> load_problem(const std::string& path, std::optional<std::uint32_t> field_override);

/// "a..b"
std::pair<long, long> parse_window(const std::string& text);

}  // namespace mcmlab::cli
