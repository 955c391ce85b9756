#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <string_view>
#include <vector>

namespace cwn {

/// Opaque node handle. Places and transitions share one id space; ids are
/// assigned in construction order and never reused within a net value.
using NodeId = std::int32_t;

constexpr NodeId kNoNode = -1;

enum class NodeKind { Place, Transition };

/// A workflow net: places, transitions, and unit-weight arcs between nodes
/// of opposite kind, with one entry place and one exit place.
///
/// The class only enforces local shape (arc endpoints exist and alternate
/// kind, no duplicate arcs, unique names). Global well-formedness (entry
/// has no predecessors, exit no successors, strong connectedness under the
/// transient exit-to-entry closure arc) is checked by validate(), which
/// reports violations as data.
class WorkflowNet {
public:
	NodeId add_place(const std::string& name);
	NodeId add_transition(const std::string& name);

	/// Throws Error on unknown endpoints, same-kind endpoints, or a
	/// duplicate arc. Arc weights beyond 1 are not representable.
	void add_arc(NodeId from, NodeId to);

	/// Throws Error when the arc does not exist.
	void remove_arc(NodeId from, NodeId to);

	/// Removes the node and every arc touching it.
	void remove_node(NodeId n);

	void set_entry(NodeId p);
	void set_exit(NodeId p);

	bool has_node(NodeId n) const;
	NodeKind kind(NodeId n) const;
	bool is_place(NodeId n) const;
	bool is_transition(NodeId n) const;

	const std::set<NodeId>& places() const { return places_; }
	const std::set<NodeId>& transitions() const { return transitions_; }

	const std::set<NodeId>& postset(NodeId n) const;
	const std::set<NodeId>& preset(NodeId n) const;
	bool has_arc(NodeId from, NodeId to) const;
	std::vector<std::pair<NodeId, NodeId>> arcs() const;
	std::size_t arc_count() const;

	NodeId entry() const { return entry_; }
	NodeId exit() const { return exit_; }

	const std::string& name(NodeId n) const;
	std::optional<NodeId> find(std::string_view name) const;

	/// Next id the net would hand out. Monotone; survives node removal, so
	/// replaying a recorded rule sequence reproduces ids exactly.
	NodeId next_id() const { return next_id_; }

	/// Derives a fresh unique name from a proposed one by suffixing the id
	/// when taken.
	std::string fresh_name(const std::string& proposed) const;

	bool operator==(const WorkflowNet& other) const;

private:
	NodeId add_node(NodeKind k, const std::string& name);

	std::set<NodeId> places_;
	std::set<NodeId> transitions_;
	std::map<NodeId, std::set<NodeId>> succ_;
	std::map<NodeId, std::set<NodeId>> pred_;
	std::map<NodeId, std::string> names_;
	std::map<std::string, NodeId, std::less<>> by_name_;
	NodeId entry_ = kNoNode;
	NodeId exit_ = kNoNode;
	NodeId next_id_ = 0;
};

/// One well-formedness violation, as data. `clause` is a stable tag,
/// `message` is human-readable, `nodes` lists the offenders.
struct Violation {
	std::string clause;
	std::string message;
	std::vector<NodeId> nodes;
};

/// Checks entry/exit shape and strong connectedness under the transient
/// closure arc from exit to entry. The net value itself is never mutated;
/// an empty result means the net is a well-formed workflow net.
std::vector<Violation> validate(const WorkflowNet& net);

/// A cluster: the smallest node set closed under "a place brings all its
/// successor transitions, a transition brings all its predecessor places".
/// Equivalently a connected component of the undirected place-transition
/// incidence restricted to place-to-transition arcs.
struct Cluster {
	std::vector<NodeId> places;       // sorted
	std::vector<NodeId> transitions;  // sorted
	NodeId representative = kNoNode;  // minimal node id in the cluster

	bool contains_place(NodeId p) const;
	bool contains_transition(NodeId t) const;
	std::vector<NodeId> nodes() const;
};

/// The cluster partition of a net. Clusters are ordered by representative.
class ClusterPartition {
public:
	explicit ClusterPartition(const WorkflowNet& net);

	const std::vector<Cluster>& clusters() const { return clusters_; }
	const Cluster& cluster_of(NodeId n) const;
	std::size_t index_of(NodeId n) const;
	std::size_t size() const { return clusters_.size(); }

private:
	std::vector<Cluster> clusters_;
	std::map<NodeId, std::size_t> index_;
};

/// True when every place of the cluster has an arc to every transition of
/// the cluster.
bool is_free_choice_cluster(const WorkflowNet& net, const Cluster& c);

/// True when all clusters are free choice. Equivalent to the pairwise
/// condition "any two places have disjoint or equal postsets".
bool is_free_choice_net(const WorkflowNet& net);

/// Cycle check on the plain arc graph, without the exit-to-entry closure.
bool is_acyclic(const WorkflowNet& net);

/// True when firing t marks all places of c, i.e. the places of c are
/// contained in the postset of t.
bool unconditionally_enables(const WorkflowNet& net, NodeId t, const Cluster& c);

/// A marking: a multiset of anonymous tokens over places. Zero entries are
/// never stored, so equal markings compare equal structurally.
class Marking {
public:
	Marking() = default;

	static Marking single(NodeId place, std::uint32_t n = 1);

	std::uint32_t count(NodeId place) const;
	void add(NodeId place, std::uint32_t n = 1);

	/// Throws Error when removing more tokens than present.
	void remove(NodeId place, std::uint32_t n = 1);

	const std::map<NodeId, std::uint32_t>& counts() const { return counts_; }
	std::uint32_t total() const;
	bool empty() const { return counts_.empty(); }

	bool operator==(const Marking& other) const { return counts_ == other.counts_; }
	bool operator<(const Marking& other) const { return counts_ < other.counts_; }

private:
	std::map<NodeId, std::uint32_t> counts_;
};

bool is_enabled(const WorkflowNet& net, const Marking& m, NodeId t);

/// Fires t: removes one token from each predecessor place, adds one to each
/// successor place. Throws NotEnabledError naming an unmarked place.
Marking fire(const WorkflowNet& net, const Marking& m, NodeId t);

}
