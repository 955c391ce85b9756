#include "cwn/transformer.hpp"

#include <algorithm>
#include <deque>
#include <map>
#include <numeric>

#include "cwn/error.hpp"

namespace cwn {

namespace {

constexpr std::size_t kProductBound = 1u << 21;

// Sort permutation of `places`; applied to pair components so that place
// lists and components agree on ascending id order.
std::vector<std::size_t> sort_permutation(const std::vector<NodeId>& places) {
	std::vector<std::size_t> perm(places.size());
	std::iota(perm.begin(), perm.end(), 0);
	std::sort(perm.begin(), perm.end(),
	          [&](std::size_t a, std::size_t b) { return places[a] < places[b]; });
	return perm;
}

std::vector<ColorValue> apply_permutation(const std::vector<ColorValue>& values,
                                          const std::vector<std::size_t>& perm) {
	std::vector<ColorValue> out(values.size());
	for (std::size_t i = 0; i < perm.size(); ++i) out[i] = values[perm[i]];
	return out;
}

void check_distinct(const std::vector<NodeId>& places, const char* side) {
	for (std::size_t i = 1; i < places.size(); ++i)
		if (places[i] == places[i - 1])
			throw Error(std::string("transformer ") + side + " places must be distinct");
}

}

Transformer::Transformer(std::vector<NodeId> inputs, std::vector<NodeId> outputs,
                         std::set<TransformerPair> pairs) {
	const auto in_perm = sort_permutation(inputs);
	const auto out_perm = sort_permutation(outputs);
	inputs_.resize(inputs.size());
	outputs_.resize(outputs.size());
	for (std::size_t i = 0; i < in_perm.size(); ++i) inputs_[i] = inputs[in_perm[i]];
	for (std::size_t i = 0; i < out_perm.size(); ++i) outputs_[i] = outputs[out_perm[i]];
	check_distinct(inputs_, "input");
	check_distinct(outputs_, "output");

	for (const TransformerPair& p : pairs) {
		if (p.in.size() != inputs_.size() || p.out.size() != outputs_.size())
			throw Error("transformer pair component count does not match place lists");
		pairs_.insert(TransformerPair{apply_permutation(p.in, in_perm),
		                              apply_permutation(p.out, out_perm)});
	}
}

std::vector<std::vector<ColorValue>> enumerate_product(const std::vector<ColorSet>& sets) {
	std::size_t total = 1;
	for (const ColorSet& s : sets) {
		if (s.size() == 0) throw Error("cannot enumerate over an empty color set");
		if (total > kProductBound / s.size())
			throw Error("color set product too large to enumerate");
		total *= s.size();
	}
	std::vector<std::vector<ColorValue>> out;
	out.reserve(total);
	std::vector<ColorValue> current(sets.size());
	// Odometer enumeration; rightmost component varies fastest.
	std::vector<std::size_t> idx(sets.size(), 0);
	for (std::size_t n = 0; n < total; ++n) {
		for (std::size_t i = 0; i < sets.size(); ++i) current[i] = sets[i].values()[idx[i]];
		out.push_back(current);
		for (std::size_t i = sets.size(); i-- > 0;) {
			if (++idx[i] < sets[i].size()) break;
			idx[i] = 0;
		}
		if (sets.empty()) break;
	}
	return out;
}

Transformer identity_transformer(const std::vector<NodeId>& places,
                                 const std::vector<ColorSet>& sets) {
	if (places.size() != sets.size())
		throw Error("identity transformer needs one color set per place");
	std::set<TransformerPair> pairs;
	for (const auto& tuple : enumerate_product(sets)) pairs.insert({tuple, tuple});
	return Transformer(places, places, std::move(pairs));
}

Transformer union_transformers(const Transformer& a, const Transformer& b) {
	if (a.inputs() != b.inputs() || a.outputs() != b.outputs())
		throw Error("transformer union requires identical signatures");
	std::set<TransformerPair> pairs = a.pairs();
	pairs.insert(b.pairs().begin(), b.pairs().end());
	return Transformer(a.inputs(), a.outputs(), std::move(pairs));
}

Transformer compose_transformers(const Transformer& first, const Transformer& second) {
	// Positions of second's inputs within first's outputs.
	std::vector<std::size_t> feed_pos;
	feed_pos.reserve(second.inputs().size());
	for (NodeId p : second.inputs()) {
		auto it = std::find(first.outputs().begin(), first.outputs().end(), p);
		if (it == first.outputs().end())
			throw Error("composition requires the second transformer's inputs among the "
			            "first's outputs (missing place " + std::to_string(p) + ")");
		feed_pos.push_back(static_cast<std::size_t>(it - first.outputs().begin()));
	}

	std::vector<NodeId> pass_places;
	std::vector<std::size_t> pass_pos;
	for (std::size_t i = 0; i < first.outputs().size(); ++i) {
		const NodeId p = first.outputs()[i];
		if (std::find(second.inputs().begin(), second.inputs().end(), p) ==
		    second.inputs().end()) {
			pass_places.push_back(p);
			pass_pos.push_back(i);
		}
	}
	for (NodeId p : pass_places)
		if (std::find(second.outputs().begin(), second.outputs().end(), p) !=
		    second.outputs().end())
			throw Error("composition would assign place " + std::to_string(p) +
			            " twice (pass-through collides with an output)");

	// Result output places in canonical order, each tagged with its source:
	// a pass-through slot of `first` or an output slot of `second`.
	struct Slot {
		NodeId place;
		bool from_pass;
		std::size_t pos;
	};
	std::vector<Slot> slots;
	for (std::size_t i = 0; i < pass_places.size(); ++i)
		slots.push_back({pass_places[i], true, pass_pos[i]});
	for (std::size_t i = 0; i < second.outputs().size(); ++i)
		slots.push_back({second.outputs()[i], false, i});
	std::sort(slots.begin(), slots.end(),
	          [](const Slot& a, const Slot& b) { return a.place < b.place; });

	std::vector<NodeId> result_outputs;
	for (const Slot& s : slots) result_outputs.push_back(s.place);

	std::map<std::vector<ColorValue>, std::vector<const TransformerPair*>> by_input;
	for (const TransformerPair& sp : second.pairs()) by_input[sp.in].push_back(&sp);

	std::set<TransformerPair> pairs;
	std::vector<ColorValue> key(second.inputs().size());
	for (const TransformerPair& fp : first.pairs()) {
		for (std::size_t i = 0; i < feed_pos.size(); ++i) key[i] = fp.out[feed_pos[i]];
		auto it = by_input.find(key);
		if (it == by_input.end()) continue;
		for (const TransformerPair* sp : it->second) {
			std::vector<ColorValue> out(slots.size());
			for (std::size_t i = 0; i < slots.size(); ++i)
				out[i] = slots[i].from_pass ? fp.out[slots[i].pos] : sp->out[slots[i].pos];
			pairs.insert({fp.in, std::move(out)});
		}
	}
	return Transformer(first.inputs(), result_outputs, std::move(pairs));
}

Transformer star_transformer(const Transformer& t, const std::vector<ColorSet>& sets) {
	if (t.inputs() != t.outputs())
		throw Error("star requires an endo-relation (inputs equal outputs)");
	if (sets.size() != t.inputs().size())
		throw Error("star needs one color set per place");

	const auto domain = enumerate_product(sets);
	std::map<std::vector<ColorValue>, std::size_t> index;
	for (std::size_t i = 0; i < domain.size(); ++i) index[domain[i]] = i;

	std::vector<std::vector<std::size_t>> adj(domain.size());
	for (const TransformerPair& p : t.pairs()) {
		auto from = index.find(p.in);
		auto to = index.find(p.out);
		if (from == index.end() || to == index.end())
			throw Error("star relation leaves the declared color sets");
		adj[from->second].push_back(to->second);
	}

	std::set<TransformerPair> pairs;
	std::vector<char> seen(domain.size());
	for (std::size_t start = 0; start < domain.size(); ++start) {
		std::fill(seen.begin(), seen.end(), 0);
		std::deque<std::size_t> queue{start};
		seen[start] = 1;
		while (!queue.empty()) {
			const std::size_t n = queue.front();
			queue.pop_front();
			for (std::size_t m : adj[n])
				if (!seen[m]) {
					seen[m] = 1;
					queue.push_back(m);
				}
		}
		for (std::size_t i = 0; i < domain.size(); ++i)
			if (seen[i]) pairs.insert({domain[start], domain[i]});
	}
	return Transformer(t.inputs(), t.outputs(), std::move(pairs));
}

std::optional<std::vector<ColorValue>> find_uncovered_input(
	const Transformer& t, const std::vector<ColorSet>& input_sets) {
	if (input_sets.size() != t.inputs().size())
		throw Error("left-totality check needs one color set per input place");
	std::set<std::vector<ColorValue>> covered;
	for (const TransformerPair& p : t.pairs()) covered.insert(p.in);
	for (const auto& tuple : enumerate_product(input_sets))
		if (!covered.count(tuple)) return tuple;
	return std::nullopt;
}

bool check_left_total(const Transformer& t, const std::vector<ColorSet>& input_sets) {
	return !find_uncovered_input(t, input_sets).has_value();
}

}
