#pragma once

#include <optional>
#include <set>
#include <vector>

#include "cwn/color.hpp"
#include "cwn/net.hpp"

namespace cwn {

/// One element of a transformer relation: one color value per input place
/// paired with one color value per output place, components ordered like
/// the owning transformer's place lists.
struct TransformerPair {
	std::vector<ColorValue> in;
	std::vector<ColorValue> out;

	bool operator==(const TransformerPair& o) const { return in == o.in && out == o.out; }
	bool operator<(const TransformerPair& o) const {
		if (in != o.in) return in < o.in;
		return out < o.out;
	}
};

/// An extensional relation between the colors of a transition's input
/// places and output places. Place lists are kept in canonical ascending
/// id order; pair components are permuted on construction to match.
class Transformer {
public:
	Transformer() = default;

	/// Accepts place lists in any order and permutes every pair into
	/// canonical order. Throws Error on duplicate places or pairs whose
	/// component counts do not match the place lists.
	Transformer(std::vector<NodeId> inputs, std::vector<NodeId> outputs,
	            std::set<TransformerPair> pairs);

	const std::vector<NodeId>& inputs() const { return inputs_; }
	const std::vector<NodeId>& outputs() const { return outputs_; }
	const std::set<TransformerPair>& pairs() const { return pairs_; }
	bool contains(const TransformerPair& p) const { return pairs_.count(p) > 0; }
	std::size_t size() const { return pairs_.size(); }

	bool operator==(const Transformer& o) const {
		return inputs_ == o.inputs_ && outputs_ == o.outputs_ && pairs_ == o.pairs_;
	}

private:
	std::vector<NodeId> inputs_;
	std::vector<NodeId> outputs_;
	std::set<TransformerPair> pairs_;
};

/// Enumerates the cartesian product of the given color sets in
/// lexicographic order, one value per set. Throws Error when the product
/// exceeds an internal safety bound.
std::vector<std::vector<ColorValue>> enumerate_product(const std::vector<ColorSet>& sets);

/// The identity relation over the full product of the given color sets.
/// `places` and `sets` run in parallel.
Transformer identity_transformer(const std::vector<NodeId>& places,
                                 const std::vector<ColorSet>& sets);

/// Set union of two relations with identical signatures.
Transformer union_transformers(const Transformer& a, const Transformer& b);

/// Relational composition for consecutive firings. The inputs of `second`
/// must all be outputs of `first`; remaining outputs of `first` pass
/// through unchanged. Result inputs are first's inputs, result outputs are
/// the pass-through places plus second's outputs, in canonical order.
/// Throws Error when a pass-through place is also an output of `second`
/// (the combined effect would need two tokens on one place).
Transformer compose_transformers(const Transformer& first, const Transformer& second);

/// Reflexive-transitive closure of an endo-relation (inputs equal
/// outputs). `sets` gives the color set of each place, aligned with the
/// input list; the identity over their full product seeds the closure.
Transformer star_transformer(const Transformer& t, const std::vector<ColorSet>& sets);

/// First input tuple of the full product not covered by any pair, if any.
std::optional<std::vector<ColorValue>> find_uncovered_input(
	const Transformer& t, const std::vector<ColorSet>& input_sets);

/// True when every tuple of the input product has at least one pair.
bool check_left_total(const Transformer& t, const std::vector<ColorSet>& input_sets);

}
