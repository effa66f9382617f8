#pragma once

// The alignment layer: tagged links between predicate-argument structures of
// a sentence pair, with role-based argument links nested inside each
// predicate link. Elements without a counterpart simply stay unaligned.

#include "fuse/core.hpp"

namespace fuse {

struct SentencePair {
  std::string document;
  int sentence_number = 0;
  std::string lang_a;
  std::string lang_b;

  std::string str() const {
    return document + ":" + std::to_string(sentence_number);
  }
  auto operator<=>(const SentencePair&) const = default;
};

struct ArgAlignment {
  std::string aid_a;
  std::string aid_b;
  std::string role_a;  // role of aid_a in structure a
  std::string role_b;
  std::vector<std::string> tags;

  bool has_tag(std::string_view tag) const {
    for (const auto& t : tags)
      if (t == tag) return true;
    return false;
  }
};

struct PredicateAlignment {
  std::string pid_a;
  std::string pid_b;
  std::vector<std::string> tags;
  std::vector<ArgAlignment> args;

  bool has_tag(std::string_view tag) const {
    for (const auto& t : tags)
      if (t == tag) return true;
    return false;
  }
};

// One #PAIR block of an ALN file: all predicate alignments of one sentence
// pair, in file order.
struct PairBlock {
  SentencePair pair;
  std::vector<PredicateAlignment> aligns;
};

}  // namespace fuse
