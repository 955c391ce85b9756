#pragma once

#include <map>
#include <string>
#include <vector>

#include "cwn/net.hpp"
#include "cwn/transformer.hpp"

namespace cwn {

/// How partially covered transformers are treated. Permissive lets a
/// transition fire only for covered inputs; strict rejects nets whose
/// transformers are not left-total at load time.
enum class Mode { Permissive, Strict };

/// A workflow net with a finite color set per place and a transformer
/// relation per transition. A plain net is the special case where every
/// place carries the unit color set.
struct ColoredWorkflowNet {
	WorkflowNet net;
	std::map<NodeId, ColorSet> colors;
	std::map<NodeId, Transformer> transformers;
	std::string name = "net";
	Mode mode = Mode::Permissive;

	const ColorSet& color_set(NodeId place) const;
	const Transformer& transformer(NodeId transition) const;

	/// Color sets for the given places, in the given order.
	std::vector<ColorSet> color_sets_for(const std::vector<NodeId>& places) const;

	bool operator==(const ColoredWorkflowNet& other) const;
};

/// Structural validation plus color conformance: every place has a color
/// set, every transition a transformer whose signature matches its arcs
/// and whose pairs stay within the place color sets.
std::vector<Violation> validate(const ColoredWorkflowNet& cnet);

/// A colored marking: a multiset of color values per place. Token lists
/// are kept sorted so equal markings compare equal structurally.
class ColoredMarking {
public:
	ColoredMarking() = default;

	static ColoredMarking single(NodeId place, const ColorValue& v);

	void add(NodeId place, const ColorValue& v);

	/// Throws Error when no token with that value is present.
	void remove(NodeId place, const ColorValue& v);

	bool has(NodeId place, const ColorValue& v) const;
	std::size_t count(NodeId place) const;
	std::size_t total() const;

	const std::map<NodeId, std::vector<ColorValue>>& tokens() const { return tokens_; }

	bool operator==(const ColoredMarking& o) const { return tokens_ == o.tokens_; }
	bool operator<(const ColoredMarking& o) const { return tokens_ < o.tokens_; }

private:
	std::map<NodeId, std::vector<ColorValue>> tokens_;
};

/// Bindings of t enabled in m: the pairs of t's transformer whose input
/// components are all available as tokens. Order follows the pair order.
std::vector<TransformerPair> enabled_bindings(const ColoredWorkflowNet& cnet,
                                              const ColoredMarking& m, NodeId t);

/// Fires t under the chosen binding: consumes one token per input place
/// carrying the binding's input component, produces the output components.
/// Throws GuardError when the binding is not part of t's transformer and
/// NotEnabledError when a required token is missing.
ColoredMarking fire_colored(const ColoredWorkflowNet& cnet, const ColoredMarking& m,
                            NodeId t, const TransformerPair& binding);

}
