#include "cwn/colored_net.hpp"

#include <algorithm>

#include "cwn/error.hpp"

namespace cwn {

const ColorSet& ColoredWorkflowNet::color_set(NodeId place) const {
	auto it = colors.find(place);
	if (it == colors.end())
		throw Error("place " + std::to_string(place) + " has no color set");
	return it->second;
}

const Transformer& ColoredWorkflowNet::transformer(NodeId transition) const {
	auto it = transformers.find(transition);
	if (it == transformers.end())
		throw Error("transition " + std::to_string(transition) + " has no transformer");
	return it->second;
}

std::vector<ColorSet> ColoredWorkflowNet::color_sets_for(
	const std::vector<NodeId>& places) const {
	std::vector<ColorSet> out;
	out.reserve(places.size());
	for (NodeId p : places) out.push_back(color_set(p));
	return out;
}

bool ColoredWorkflowNet::operator==(const ColoredWorkflowNet& other) const {
	return net == other.net && colors == other.colors && transformers == other.transformers;
}

std::vector<Violation> validate(const ColoredWorkflowNet& cnet) {
	std::vector<Violation> out = validate(cnet.net);

	for (NodeId p : cnet.net.places())
		if (!cnet.colors.count(p))
			out.push_back({"place-colors",
			               "place '" + cnet.net.name(p) + "' has no color set", {p}});

	for (NodeId t : cnet.net.transitions()) {
		auto it = cnet.transformers.find(t);
		if (it == cnet.transformers.end()) {
			out.push_back({"transition-transformer",
			               "transition '" + cnet.net.name(t) + "' has no transformer", {t}});
			continue;
		}
		const Transformer& f = it->second;
		const std::vector<NodeId> pre(cnet.net.preset(t).begin(), cnet.net.preset(t).end());
		const std::vector<NodeId> post(cnet.net.postset(t).begin(), cnet.net.postset(t).end());
		if (f.inputs() != pre || f.outputs() != post) {
			out.push_back({"transformer-signature",
			               "transformer of '" + cnet.net.name(t) +
			                   "' does not match the transition's arcs", {t}});
			continue;
		}
		bool conform = true;
		for (const TransformerPair& pair : f.pairs()) {
			for (std::size_t i = 0; i < pre.size() && conform; ++i)
				if (!cnet.colors.count(pre[i]) || !cnet.color_set(pre[i]).contains(pair.in[i]))
					conform = false;
			for (std::size_t i = 0; i < post.size() && conform; ++i)
				if (!cnet.colors.count(post[i]) ||
				    !cnet.color_set(post[i]).contains(pair.out[i]))
					conform = false;
			if (!conform) break;
		}
		if (!conform)
			out.push_back({"transformer-colors",
			               "transformer of '" + cnet.net.name(t) +
			                   "' uses values outside the place color sets", {t}});
	}
	return out;
}

ColoredMarking ColoredMarking::single(NodeId place, const ColorValue& v) {
	ColoredMarking m;
	m.add(place, v);
	return m;
}

void ColoredMarking::add(NodeId place, const ColorValue& v) {
	auto& vec = tokens_[place];
	vec.insert(std::upper_bound(vec.begin(), vec.end(), v), v);
}

void ColoredMarking::remove(NodeId place, const ColorValue& v) {
	auto it = tokens_.find(place);
	if (it == tokens_.end()) throw Error("no token to remove");
	auto& vec = it->second;
	auto pos = std::lower_bound(vec.begin(), vec.end(), v);
	if (pos == vec.end() || *pos != v) throw Error("no token with the requested value");
	vec.erase(pos);
	if (vec.empty()) tokens_.erase(it);
}

bool ColoredMarking::has(NodeId place, const ColorValue& v) const {
	auto it = tokens_.find(place);
	if (it == tokens_.end()) return false;
	return std::binary_search(it->second.begin(), it->second.end(), v);
}

std::size_t ColoredMarking::count(NodeId place) const {
	auto it = tokens_.find(place);
	return it == tokens_.end() ? 0 : it->second.size();
}

std::size_t ColoredMarking::total() const {
	std::size_t n = 0;
	for (const auto& [p, vec] : tokens_) n += vec.size();
	return n;
}

std::vector<TransformerPair> enabled_bindings(const ColoredWorkflowNet& cnet,
                                              const ColoredMarking& m, NodeId t) {
	const Transformer& f = cnet.transformer(t);
	std::vector<TransformerPair> out;
	for (const TransformerPair& pair : f.pairs()) {
		bool ok = true;
		for (std::size_t i = 0; i < f.inputs().size(); ++i)
			if (!m.has(f.inputs()[i], pair.in[i])) {
				ok = false;
				break;
			}
		if (ok) out.push_back(pair);
	}
	return out;
}

ColoredMarking fire_colored(const ColoredWorkflowNet& cnet, const ColoredMarking& m,
                            NodeId t, const TransformerPair& binding) {
	const Transformer& f = cnet.transformer(t);
	if (!f.contains(binding))
		throw GuardError("binding is not part of the transformer of '" +
		                 cnet.net.name(t) + "'");
	for (std::size_t i = 0; i < f.inputs().size(); ++i)
		if (!m.has(f.inputs()[i], binding.in[i]))
			throw NotEnabledError("transition '" + cnet.net.name(t) +
			                      "' is not enabled for the chosen binding: place '" +
			                      cnet.net.name(f.inputs()[i]) + "' lacks a token " +
			                      to_string(binding.in[i]));
	ColoredMarking next = m;
	for (std::size_t i = 0; i < f.inputs().size(); ++i)
		next.remove(f.inputs()[i], binding.in[i]);
	for (std::size_t i = 0; i < f.outputs().size(); ++i)
		next.add(f.outputs()[i], binding.out[i]);
	return next;
}

}
