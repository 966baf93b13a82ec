#pragma once

#include <cctype>
#include <fstream>
#include <istream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "qncert/element.hpp"
#include "qncert/errors.hpp"
#include "qncert/group.hpp"
#include "qncert/subgroup.hpp"

namespace qncert {

/// A validated nested pair H <= K inside an ambient group, as loaded from a
/// sectioned spec file.
struct TripleSpec {
  Group group;
  Subgroup h;
  Subgroup k;
  std::vector<Element> h_gens;
  std::vector<Element> k_gens;
};

/// Splits at the delimiter, ignoring delimiters nested inside parentheses.
/// Used for generator lists whose words may contain comma-separated cycles.
inline std::vector<std::string> split_top_level(const std::string& s,
                                                char delim) {
  std::vector<std::string> parts;
  std::string cur;
  int depth = 0;
  for (char c : s) {
    if (c == '(') ++depth;
    if (c == ')' && depth > 0) --depth;
    if (c == delim && depth == 0) {
      parts.push_back(cur);
      cur.clear();
    } else {
      cur.push_back(c);
    }
  }
  parts.push_back(cur);
  return parts;
}

namespace detail {

inline std::string trim(const std::string& s) {
  std::size_t b = 0;
  std::size_t e = s.size();
  while (b < e && std::isspace(static_cast<unsigned char>(s[b]))) ++b;
  while (e > b && std::isspace(static_cast<unsigned char>(s[e - 1]))) --e;
  return s.substr(b, e - b);
}

[[noreturn]] inline void fail_line(std::size_t line, const std::string& msg) {
  throw ParseError("line " + std::to_string(line) + ": " + msg, line);
}

inline int parse_positive_int(const std::string& s, std::size_t line,
                              const std::string& key) {
  if (s.empty()) fail_line(line, key + " must be a positive integer");
  long v = 0;
  for (char c : s) {
    if (!std::isdigit(static_cast<unsigned char>(c)))
      fail_line(line, key + " must be a positive integer");
    v = v * 10 + (c - '0');
    if (v > 1000000) fail_line(line, key + " is out of range");
  }
  if (v < 1) fail_line(line, key + " must be a positive integer");
  return static_cast<int>(v);
}

inline std::vector<std::string> split_words(const std::string& value,
                                            std::size_t line) {
  std::vector<std::string> words;
  for (const std::string& part : split_top_level(value, ',')) {
    std::string w = trim(part);
    if (w.empty()) fail_line(line, "empty generator entry");
    words.push_back(std::move(w));
  }
  return words;
}

struct RawSection {
  bool present = false;
  std::size_t line = 0;
};

}  // namespace detail

/// Loads and validates a triple from the sectioned plain-text format:
/// a [group] section with family and size keys, then [H] and [K] sections
/// listing generator words. H <= K is verified; failure names the offending
/// generator.
inline TripleSpec load_triple(std::istream& in) {
  using detail::fail_line;
  using detail::trim;

  enum class Section { None, GroupSec, HSec, KSec };
  Section cur = Section::None;
  detail::RawSection sec_group, sec_h, sec_k;

  std::optional<std::string> family;
  std::optional<int> rank, degree;
  std::optional<std::vector<std::string>> group_words, h_words, k_words;
  std::size_t family_line = 0, group_words_line = 0, h_line = 0, k_line = 0;

  std::string raw;
  std::size_t lineno = 0;
  while (std::getline(in, raw)) {
    ++lineno;
    const std::size_t hash = raw.find('#');
    if (hash != std::string::npos) raw.erase(hash);
    const std::string line = trim(raw);
    if (line.empty()) continue;

    if (line.front() == '[') {
      detail::RawSection* sec = nullptr;
      if (line == "[group]") {
        cur = Section::GroupSec;
        sec = &sec_group;
      } else if (line == "[H]") {
        cur = Section::HSec;
        sec = &sec_h;
      } else if (line == "[K]") {
        cur = Section::KSec;
        sec = &sec_k;
      } else {
        fail_line(lineno, "unknown section " + line);
      }
      if (sec->present) fail_line(lineno, "duplicate section " + line);
      sec->present = true;
      sec->line = lineno;
      continue;
    }

    const std::size_t eq = raw.find('=');
    if (eq == std::string::npos)
      fail_line(lineno, "expected key = value or a section header");
    const std::string key = trim(raw.substr(0, eq));
    const std::string value = trim(raw.substr(eq + 1));

    switch (cur) {
      case Section::None:
        fail_line(lineno, "key outside any section");
      case Section::GroupSec:
        if (key == "family") {
          if (family) fail_line(lineno, "duplicate key family");
          if (value != "free" && value != "perm" && value != "abelian")
            fail_line(lineno, "unknown family " + value);
          family = value;
          family_line = lineno;
        } else if (key == "rank") {
          if (rank) fail_line(lineno, "duplicate key rank");
          rank = detail::parse_positive_int(value, lineno, "rank");
        } else if (key == "degree") {
          if (degree) fail_line(lineno, "duplicate key degree");
          degree = detail::parse_positive_int(value, lineno, "degree");
        } else if (key == "generators") {
          if (group_words) fail_line(lineno, "duplicate key generators");
          group_words = detail::split_words(value, lineno);
          group_words_line = lineno;
        } else {
          fail_line(lineno, "unknown key " + key + " in [group]");
        }
        break;
      case Section::HSec:
      case Section::KSec: {
        auto& words = cur == Section::HSec ? h_words : k_words;
        auto& wline = cur == Section::HSec ? h_line : k_line;
        const char* name = cur == Section::HSec ? "[H]" : "[K]";
        if (key != "generators")
          fail_line(lineno, "unknown key " + key + " in " + name);
        if (words) fail_line(lineno, std::string("duplicate key generators"));
        words = detail::split_words(value, lineno);
        wline = lineno;
        break;
      }
    }
  }

  if (!sec_group.present) fail_line(lineno, "missing section [group]");
  if (!family) fail_line(sec_group.line, "missing key family in [group]");
  if (!sec_h.present) fail_line(lineno, "missing section [H]");
  if (!sec_k.present) fail_line(lineno, "missing section [K]");
  if (!h_words) fail_line(sec_h.line, "missing key generators in [H]");
  if (!k_words) fail_line(sec_k.line, "missing key generators in [K]");

  std::optional<Group> group;
  if (*family == "perm") {
    if (rank) fail_line(family_line, "perm groups take degree, not rank");
    if (!degree) fail_line(family_line, "missing key degree in [group]");
    if (!group_words)
      fail_line(family_line, "missing key generators in [group]");
    const Group bare = Group::permutation_group(*degree, {});
    std::vector<std::vector<int>> images;
    for (const std::string& w : *group_words) {
      try {
        const Element p = bare.parse(w);
        images.emplace_back(p.perm().img.begin(), p.perm().img.end());
      } catch (const Error& e) {
        fail_line(group_words_line, e.what());
      }
    }
    group = Group::permutation_group(*degree, std::move(images));
  } else {
    if (degree)
      fail_line(family_line, std::string(*family) + " groups take rank, not degree");
    if (group_words)
      fail_line(group_words_line,
                "generators are only listed for perm groups");
    if (!rank) fail_line(family_line, "missing key rank in [group]");
    try {
      group = *family == "free" ? Group::free_group(*rank)
                                : Group::abelian_group(*rank);
    } catch (const Error& e) {
      fail_line(family_line, e.what());
    }
  }

  auto parse_words = [&](const std::vector<std::string>& words,
                         std::size_t line) {
    std::vector<Element> out;
    for (const std::string& w : words) {
      try {
        out.push_back(group->parse(w));
      } catch (const Error& e) {
        fail_line(line, e.what());
      }
    }
    return out;
  };

  std::vector<Element> h_gens = parse_words(*h_words, h_line);
  std::vector<Element> k_gens = parse_words(*k_words, k_line);
  Subgroup h = Subgroup::generated(*group, h_gens);
  Subgroup k = Subgroup::generated(*group, k_gens);
  for (const auto& gen : h_gens)
    if (!k.contains(gen))
      fail_line(h_line,
                "H generator " + group->print(gen) + " lies outside K");

  return TripleSpec{std::move(*group), std::move(h), std::move(k),
                    std::move(h_gens), std::move(k_gens)};
}

/// File-path convenience wrapper.
inline TripleSpec load_triple(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error("cannot open spec file: " + path);
  return load_triple(in);
}

}  // namespace qncert
