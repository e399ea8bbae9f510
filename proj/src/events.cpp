#include "epb/events.hpp"

#include <bit>
#include <sstream>

namespace epb {

const char* to_string(ErrorCode code) {
  switch (code) {
    case ErrorCode::kParse: return "ParseError";
    case ErrorCode::kContradiction: return "Contradiction";
    case ErrorCode::kUnknownObservable: return "UnknownObservable";
    case ErrorCode::kInvalidRegistry: return "InvalidRegistry";
    case ErrorCode::kUndefinedContext: return "UndefinedContext";
    case ErrorCode::kOutOfRange: return "OutOfRange";
    case ErrorCode::kInvalidBehavior: return "InvalidBehavior";
    case ErrorCode::kDuplicateEvent: return "DuplicateEvent";
    case ErrorCode::kLengthMismatch: return "LengthMismatch";
    case ErrorCode::kInvalidGraph: return "InvalidGraph";
    case ErrorCode::kTooLarge: return "TooLarge";
    case ErrorCode::kCliqueExplosion: return "CliqueExplosion";
    case ErrorCode::kInfeasible: return "Infeasible";
    case ErrorCode::kNumericalFailure: return "NumericalFailure";
    case ErrorCode::kInvalidNinthEvent: return "InvalidNinthEvent";
    case ErrorCode::kNotRepresentable: return "NotRepresentable";
  }
  return "Unknown";
}

// ---------------------------------------------------------------------------
// Registry

ObservableRegistry::Builder& ObservableRegistry::Builder::add_base(std::string id) {
  if (id.empty()) throw Error(ErrorCode::kInvalidRegistry, "empty observable id");
  for (const auto& o : observables_) {
    if (o.id == id) throw Error(ErrorCode::kInvalidRegistry, "duplicate observable id '" + id + "'");
  }
  observables_.push_back(Observable{std::move(id), Observable::Kind::kBase, 0, 0});
  return *this;
}

ObservableRegistry::Builder& ObservableRegistry::Builder::add_parity(std::string_view first,
                                                                     std::string_view second) {
  auto lookup = [&](std::string_view id) -> ObservableIndex {
    for (std::size_t i = 0; i < observables_.size(); ++i) {
      if (observables_[i].id == id) {
        if (observables_[i].kind != Observable::Kind::kBase) {
          throw Error(ErrorCode::kInvalidRegistry,
                      "parity operand '" + std::string(id) + "' is itself a parity observable");
        }
        return i;
      }
    }
    throw Error(ErrorCode::kInvalidRegistry, "parity operand '" + std::string(id) + "' is not registered");
  };
  const ObservableIndex a = lookup(first);
  const ObservableIndex b = lookup(second);
  if (a == b) throw Error(ErrorCode::kInvalidRegistry, "parity operands must be distinct");
  std::string id = std::string(first) + std::string(second);
  for (const auto& o : observables_) {
    if (o.id == id) throw Error(ErrorCode::kInvalidRegistry, "duplicate observable id '" + id + "'");
  }
  observables_.push_back(Observable{std::move(id), Observable::Kind::kParity, a, b});
  return *this;
}

std::shared_ptr<const ObservableRegistry> ObservableRegistry::Builder::build() {
  if (observables_.size() > kMaxObservables) {
    throw Error(ErrorCode::kInvalidRegistry, "too many observables (max 64)");
  }
  auto registry = std::make_shared<ObservableRegistry>();
  registry->observables_ = observables_;
  for (std::size_t i = 0; i < observables_.size(); ++i) {
    if (observables_[i].kind == Observable::Kind::kParity) registry->parities_.push_back(i);
  }
  return registry;
}

std::shared_ptr<const ObservableRegistry> ObservableRegistry::standard() {
  static const RegistryPtr registry = [] {
    Builder b;
    for (const char* id : {"A0", "A1", "B0", "B1", "A'0", "A'1", "B'0", "B'1"}) b.add_base(id);
    b.add_parity("A0", "A'0").add_parity("A1", "A'1").add_parity("A0", "A'1").add_parity("A1", "A'0");
    return b.build();
  }();
  return registry;
}

std::optional<ObservableIndex> ObservableRegistry::find(std::string_view id) const {
  for (std::size_t i = 0; i < observables_.size(); ++i) {
    if (observables_[i].id == id) return i;
  }
  return std::nullopt;
}

ObservableIndex ObservableRegistry::index_of(std::string_view id) const {
  if (auto i = find(id)) return *i;
  throw Error(ErrorCode::kUnknownObservable, "unknown observable '" + std::string(id) + "'");
}

// ---------------------------------------------------------------------------
// Assignment

namespace {

constexpr std::uint64_t bit(ObservableIndex i) { return std::uint64_t{1} << i; }

std::string format_tokens(const ObservableRegistry& registry, std::uint64_t assigned, std::uint64_t minus) {
  std::string out;
  for (std::size_t i = 0; i < registry.size(); ++i) {
    if (!(assigned & bit(i))) continue;
    if (!out.empty()) out += ' ';
    out += registry.id(i);
    out += (minus & bit(i)) ? '-' : '+';
  }
  return out;
}

}  // namespace

Assignment::Assignment(RegistryPtr registry) : registry_(std::move(registry)) {
  if (!registry_) throw Error(ErrorCode::kInvalidRegistry, "null registry");
}

Assignment Assignment::parse(std::string_view text, RegistryPtr registry) {
  Assignment result(std::move(registry));
  std::istringstream in{std::string(text)};
  std::string token;
  static const std::string kUnicodeMinus = "\xE2\x88\x92";
  while (in >> token) {
    Outcome outcome;
    std::string id;
    if (token.size() > kUnicodeMinus.size() &&
        token.compare(token.size() - kUnicodeMinus.size(), kUnicodeMinus.size(), kUnicodeMinus) == 0) {
      outcome = Outcome::kMinus;
      id = token.substr(0, token.size() - kUnicodeMinus.size());
    } else if (token.size() >= 2 && (token.back() == '+' || token.back() == '-')) {
      outcome = token.back() == '+' ? Outcome::kPlus : Outcome::kMinus;
      id = token.substr(0, token.size() - 1);
    } else {
      throw Error(ErrorCode::kParse, "malformed event token '" + token + "' (expected <observable><sign>)");
    }
    result.set(id, outcome);
  }
  return result;
}

Assignment& Assignment::set(ObservableIndex index, Outcome outcome) {
  if (index >= registry_->size()) throw Error(ErrorCode::kUnknownObservable, "observable index out of range");
  const bool minus = outcome == Outcome::kMinus;
  if (has(index)) {
    if (((minus_ >> index) & 1U) != static_cast<std::uint64_t>(minus)) {
      throw Error(ErrorCode::kContradiction,
                  "observable '" + registry_->id(index) + "' assigned both outcomes");
    }
    return *this;
  }
  assigned_ |= bit(index);
  if (minus) minus_ |= bit(index);
  return *this;
}

Assignment& Assignment::set(std::string_view id, Outcome outcome) {
  return set(registry_->index_of(id), outcome);
}

std::optional<Outcome> Assignment::get(ObservableIndex index) const {
  if (index >= registry_->size() || !has(index)) return std::nullopt;
  return (minus_ & bit(index)) ? Outcome::kMinus : Outcome::kPlus;
}

std::size_t Assignment::count() const { return static_cast<std::size_t>(std::popcount(assigned_)); }

std::string Assignment::to_string() const { return format_tokens(*registry_, assigned_, minus_); }

// ---------------------------------------------------------------------------
// Event

Event close_event(const Assignment& assignment) {
  const auto& registry = *assignment.registry();
  std::uint64_t assigned = assignment.assigned_mask();
  std::uint64_t minus = assignment.minus_mask();

  auto value = [&](ObservableIndex i) -> bool { return (minus >> i) & 1U; };  // true = minus
  auto assign = [&](ObservableIndex i, bool is_minus) {
    assigned |= bit(i);
    if (is_minus) minus |= bit(i);
  };

  // A parity outcome is minus iff exactly one operand is minus, so in every
  // consistent row the three minus-flags XOR to zero.
  bool changed = true;
  while (changed) {
    changed = false;
    for (ObservableIndex p : registry.parities()) {
      const auto& obs = registry.at(p);
      const ObservableIndex trio[3] = {obs.first, obs.second, p};
      int known = 0;
      bool parity = false;
      ObservableIndex missing = 0;
      for (ObservableIndex i : trio) {
        if (assigned & bit(i)) {
          ++known;
          parity ^= value(i);
        } else {
          missing = i;
        }
      }
      if (known == 3 && parity) {
        throw Error(ErrorCode::kContradiction,
                    "parity rule for '" + obs.id + "' violated by " + format_tokens(registry, assigned, minus));
      }
      if (known == 2) {
        assign(missing, parity);
        changed = true;
      }
    }
  }
  return Event(assignment.registry(), assigned, minus);
}

Event Event::parse(std::string_view text, const RegistryPtr& registry) {
  return close_event(Assignment::parse(text, registry));
}

std::optional<Outcome> Event::get(ObservableIndex index) const {
  if (index >= registry_->size() || !has(index)) return std::nullopt;
  return (minus_ & bit(index)) ? Outcome::kMinus : Outcome::kPlus;
}

std::optional<Outcome> Event::get(std::string_view id) const { return get(registry_->index_of(id)); }

std::size_t Event::count() const { return static_cast<std::size_t>(std::popcount(assigned_)); }

std::string Event::to_string() const { return format_tokens(*registry_, assigned_, minus_); }

namespace {

void require_same_registry(const Event& a, const Event& b) {
  if (a.registry() != b.registry()) {
    throw Error(ErrorCode::kInvalidRegistry, "events belong to different observable registries");
  }
}

}  // namespace

bool are_equivalent(const Event& a, const Event& b) {
  require_same_registry(a, b);
  return a == b;
}

Exclusivity are_exclusive(const Event& a, const Event& b) {
  require_same_registry(a, b);
  const std::uint64_t differing = a.assigned_mask() & b.assigned_mask() & (a.minus_mask() ^ b.minus_mask());
  if (differing == 0) return {};
  return {true, static_cast<ObservableIndex>(std::countr_zero(differing))};
}

}  // namespace epb
