#include "mclass/measure.hpp"

#include <algorithm>
#include <set>

#include "mclass/errors.hpp"

namespace mclass {

FiniteMeasureSpace::FiniteMeasureSpace(std::vector<std::string> atom_ids,
                                       std::vector<Rational> weights)
    : atom_ids_(std::move(atom_ids)), weights_(std::move(weights)) {
  if (atom_ids_.size() != weights_.size()) {
    throw InvalidMeasure("atom id count " + std::to_string(atom_ids_.size()) +
                         " differs from weight count " + std::to_string(weights_.size()));
  }
  if (weights_.empty()) throw InvalidMeasure("a probability space needs at least one atom");
  Rational total = 0;
  for (std::size_t i = 0; i < weights_.size(); ++i) {
    if (weights_[i] <= 0) {
      throw InvalidMeasure("atom '" + atom_ids_[i] + "' has non-positive weight " +
                           format_rational(weights_[i]));
    }
    total += weights_[i];
  }
  if (total != 1) throw InvalidMeasure("weights sum to " + format_rational(total) + ", not 1");
  std::set<std::string> seen;
  for (const auto& id : atom_ids_) {
    if (!seen.insert(id).second) throw InvalidMeasure("duplicate atom id '" + id + "'");
  }
}

FiniteMeasureSpace FiniteMeasureSpace::from_weights(std::vector<Rational> weights) {
  std::vector<std::string> ids;
  ids.reserve(weights.size());
  for (std::size_t i = 0; i < weights.size(); ++i) ids.push_back(std::to_string(i));
  return FiniteMeasureSpace(std::move(ids), std::move(weights));
}

FiniteMeasureSpace FiniteMeasureSpace::uniform(std::size_t atoms) {
  if (atoms == 0) throw InvalidMeasure("a probability space needs at least one atom");
  return from_weights(std::vector<Rational>(atoms, Rational(1, static_cast<long>(atoms))));
}

MetricType::MetricType(std::vector<Rational> weights) : weights_(std::move(weights)) {
  Rational total = 0;
  for (std::size_t i = 0; i < weights_.size(); ++i) {
    if (weights_[i] <= 0 || weights_[i] > 1) {
      throw InvalidMeasure("metric type entry " + format_rational(weights_[i]) + " outside (0,1]");
    }
    if (i > 0 && weights_[i] > weights_[i - 1]) {
      throw InvalidMeasure("metric type is not non-increasing");
    }
    total += weights_[i];
  }
  // Finite atomic spaces carry no continuous part, so no deficit is allowed.
  if (total != 1) throw InvalidMeasure("metric type sums to " + format_rational(total));
}

std::string to_string(const MetricType& type) {
  std::string out = "(";
  for (std::size_t i = 0; i < type.weights().size(); ++i) {
    if (i) out += ",";
    out += format_rational(type.weights()[i]);
  }
  return out + ")";
}

OneVarFunction::OneVarFunction(FiniteMeasureSpace domain_, std::vector<Label> values_)
    : domain(std::move(domain_)), values(std::move(values_)) {
  if (values.size() != domain.size()) {
    throw InvalidFunction("one-variable function has " + std::to_string(values.size()) +
                          " values for " + std::to_string(domain.size()) + " atoms");
  }
}

FiniteMeasureSpace conditional_measure(const OneVarFunction& f, const Label& z) {
  std::vector<std::string> ids;
  std::vector<Rational> weights;
  Rational mass = 0;
  for (std::size_t i = 0; i < f.values.size(); ++i) {
    if (f.values[i] != z) continue;
    ids.push_back(f.domain.atom_ids()[i]);
    weights.push_back(f.domain.weight(i));
    mass += f.domain.weight(i);
  }
  if (ids.empty()) throw ZeroMassValue("no atom takes the value '" + z + "'");
  for (auto& w : weights) w /= mass;
  return FiniteMeasureSpace(std::move(ids), std::move(weights));
}

MetricType metric_type(const FiniteMeasureSpace& space) {
  std::vector<Rational> sorted = space.weights();
  std::sort(sorted.begin(), sorted.end(), std::greater<>());
  return MetricType(std::move(sorted));
}

RokhlinInvariant rokhlin_invariant(const OneVarFunction& f) {
  std::map<Label, Rational> fiber_mass;
  for (std::size_t i = 0; i < f.values.size(); ++i) fiber_mass[f.values[i]] += f.domain.weight(i);

  RokhlinInvariant invariant;
  for (const auto& [z, mass] : fiber_mass) {
    invariant[{z, metric_type(conditional_measure(f, z))}] += mass;
  }
  return invariant;
}

bool rokhlin_isomorphic(const OneVarFunction& f, const OneVarFunction& g) {
  return rokhlin_invariant(f) == rokhlin_invariant(g);
}

}  // namespace mclass
