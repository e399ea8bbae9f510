#pragma once

// Event algebra for sharp measurements: observables (base and parity),
// partial outcome assignments, closure under parity definitions, equivalence
// and exclusivity.

#include <cstddef>
#include <cstdint>
#include <memory>
#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "epb/error.hpp"

namespace epb {

enum class Outcome : std::int8_t { kPlus = 1, kMinus = -1 };

inline int sign(Outcome o) { return static_cast<int>(o); }
inline Outcome flip(Outcome o) { return o == Outcome::kPlus ? Outcome::kMinus : Outcome::kPlus; }
inline Outcome product(Outcome a, Outcome b) { return a == b ? Outcome::kPlus : Outcome::kMinus; }
inline char sign_char(Outcome o) { return o == Outcome::kPlus ? '+' : '-'; }

using ObservableIndex = std::size_t;

struct Observable {
  enum class Kind { kBase, kParity };
  std::string id;
  Kind kind = Kind::kBase;
  // Operands of a parity observable; unused for base observables.
  ObservableIndex first = 0;
  ObservableIndex second = 0;
};

// The universe of observables an event ranges over. At most 64 observables so
// assignments fit in a pair of bitmasks.
class ObservableRegistry {
 public:
  static constexpr std::size_t kMaxObservables = 64;

  class Builder {
   public:
    Builder& add_base(std::string id);
    // The parity id is the concatenation of the operand ids.
    Builder& add_parity(std::string_view first, std::string_view second);
    std::shared_ptr<const ObservableRegistry> build();

   private:
    std::vector<Observable> observables_;
  };

  // Two CHSH copies: A0 A1 B0 B1 A'0 A'1 B'0 B'1 plus the parity observables
  // A0A'0 A1A'1 A0A'1 A1A'0. Shared by every event the library builds.
  static std::shared_ptr<const ObservableRegistry> standard();

  std::size_t size() const { return observables_.size(); }
  const Observable& at(ObservableIndex i) const { return observables_.at(i); }
  const std::string& id(ObservableIndex i) const { return observables_.at(i).id; }
  std::optional<ObservableIndex> find(std::string_view id) const;
  ObservableIndex index_of(std::string_view id) const;  // throws kUnknownObservable
  const std::vector<ObservableIndex>& parities() const { return parities_; }

 private:
  std::vector<Observable> observables_;
  std::vector<ObservableIndex> parities_;
};

using RegistryPtr = std::shared_ptr<const ObservableRegistry>;

// A partial assignment of outcomes, not yet closed. Assigning one observable
// two different outcomes throws kContradiction.
class Assignment {
 public:
  explicit Assignment(RegistryPtr registry);

  // Whitespace separated `<id><sign>` tokens; sign is '+', '-' or U+2212.
  static Assignment parse(std::string_view text, RegistryPtr registry);

  Assignment& set(ObservableIndex index, Outcome outcome);
  Assignment& set(std::string_view id, Outcome outcome);

  std::optional<Outcome> get(ObservableIndex index) const;
  bool has(ObservableIndex index) const { return (assigned_ >> index) & 1U; }
  std::size_t count() const;
  const RegistryPtr& registry() const { return registry_; }
  std::uint64_t assigned_mask() const { return assigned_; }
  std::uint64_t minus_mask() const { return minus_; }

  std::string to_string() const;

 private:
  RegistryPtr registry_;
  std::uint64_t assigned_ = 0;
  std::uint64_t minus_ = 0;  // subset of assigned_
};

// A closed assignment. Immutable; closure is applied at construction.
class Event {
 public:
  static Event parse(std::string_view text, const RegistryPtr& registry = ObservableRegistry::standard());

  std::optional<Outcome> get(ObservableIndex index) const;
  std::optional<Outcome> get(std::string_view id) const;
  bool has(ObservableIndex index) const { return (assigned_ >> index) & 1U; }
  std::size_t count() const;
  const RegistryPtr& registry() const { return registry_; }
  std::uint64_t assigned_mask() const { return assigned_; }
  std::uint64_t minus_mask() const { return minus_; }

  // Tokens in registry order, e.g. "A0+ B0+ A'0+ B'1+ A0A'0+".
  std::string to_string() const;

  friend bool operator==(const Event& a, const Event& b) {
    return a.registry_ == b.registry_ && a.assigned_ == b.assigned_ && a.minus_ == b.minus_;
  }

 private:
  friend Event close_event(const Assignment& assignment);
  Event(RegistryPtr registry, std::uint64_t assigned, std::uint64_t minus)
      : registry_(std::move(registry)), assigned_(assigned), minus_(minus) {}

  RegistryPtr registry_;
  std::uint64_t assigned_ = 0;
  std::uint64_t minus_ = 0;
};

// Least fixed point of the parity rules: two known values among
// {first, second, parity} determine the third. Throws kContradiction when the
// rules force two outcomes onto one observable.
Event close_event(const Assignment& assignment);

bool are_equivalent(const Event& a, const Event& b);

struct Exclusivity {
  bool exclusive = false;
  // Lowest-index observable on which the two events disagree.
  std::optional<ObservableIndex> witness;
};

Exclusivity are_exclusive(const Event& a, const Event& b);

}  // namespace epb
