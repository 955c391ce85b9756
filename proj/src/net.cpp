#include "cwn/net.hpp"

#include <algorithm>
#include <deque>

#include "cwn/error.hpp"

namespace cwn {

namespace {

const std::set<NodeId> kEmptySet;

}

NodeId WorkflowNet::add_node(NodeKind k, const std::string& name) {
	if (name.empty()) throw Error("node name must not be empty");
	if (by_name_.count(name)) throw Error("duplicate node name '" + name + "'");
	const NodeId id = next_id_++;
	if (k == NodeKind::Place)
		places_.insert(id);
	else
		transitions_.insert(id);
	succ_[id];
	pred_[id];
	names_[id] = name;
	by_name_[name] = id;
	return id;
}

NodeId WorkflowNet::add_place(const std::string& name) {
	return add_node(NodeKind::Place, name);
}

NodeId WorkflowNet::add_transition(const std::string& name) {
	return add_node(NodeKind::Transition, name);
}

void WorkflowNet::add_arc(NodeId from, NodeId to) {
	if (!has_node(from) || !has_node(to)) throw Error("arc endpoint does not exist");
	if (kind(from) == kind(to))
		throw Error("arc must connect a place and a transition: " + name(from) + " -> " +
		            name(to));
	if (succ_[from].count(to))
		throw Error("duplicate arc " + name(from) + " -> " + name(to) +
		            " (weighted arcs are not supported)");
	succ_[from].insert(to);
	pred_[to].insert(from);
}

void WorkflowNet::remove_arc(NodeId from, NodeId to) {
	if (!succ_.count(from) || !succ_[from].count(to))
		throw Error("cannot remove missing arc");
	succ_[from].erase(to);
	pred_[to].erase(from);
}

void WorkflowNet::remove_node(NodeId n) {
	if (!has_node(n)) throw Error("cannot remove unknown node");
	for (NodeId s : succ_[n]) pred_[s].erase(n);
	for (NodeId p : pred_[n]) succ_[p].erase(n);
	succ_.erase(n);
	pred_.erase(n);
	places_.erase(n);
	transitions_.erase(n);
	by_name_.erase(names_[n]);
	names_.erase(n);
	if (entry_ == n) entry_ = kNoNode;
	if (exit_ == n) exit_ = kNoNode;
}

void WorkflowNet::set_entry(NodeId p) {
	if (!has_node(p) || !is_place(p)) throw Error("entry must be an existing place");
	entry_ = p;
}

void WorkflowNet::set_exit(NodeId p) {
	if (!has_node(p) || !is_place(p)) throw Error("exit must be an existing place");
	exit_ = p;
}

bool WorkflowNet::has_node(NodeId n) const {
	return names_.count(n) > 0;
}

NodeKind WorkflowNet::kind(NodeId n) const {
	if (places_.count(n)) return NodeKind::Place;
	if (transitions_.count(n)) return NodeKind::Transition;
	throw Error("unknown node id " + std::to_string(n));
}

bool WorkflowNet::is_place(NodeId n) const {
	return places_.count(n) > 0;
}

bool WorkflowNet::is_transition(NodeId n) const {
	return transitions_.count(n) > 0;
}

const std::set<NodeId>& WorkflowNet::postset(NodeId n) const {
	auto it = succ_.find(n);
	return it == succ_.end() ? kEmptySet : it->second;
}

const std::set<NodeId>& WorkflowNet::preset(NodeId n) const {
	auto it = pred_.find(n);
	return it == pred_.end() ? kEmptySet : it->second;
}

bool WorkflowNet::has_arc(NodeId from, NodeId to) const {
	auto it = succ_.find(from);
	return it != succ_.end() && it->second.count(to) > 0;
}

std::vector<std::pair<NodeId, NodeId>> WorkflowNet::arcs() const {
	std::vector<std::pair<NodeId, NodeId>> out;
	for (const auto& [from, tos] : succ_)
		for (NodeId to : tos) out.emplace_back(from, to);
	return out;
}

std::size_t WorkflowNet::arc_count() const {
	std::size_t n = 0;
	for (const auto& [from, tos] : succ_) n += tos.size();
	return n;
}

const std::string& WorkflowNet::name(NodeId n) const {
	auto it = names_.find(n);
	if (it == names_.end()) throw Error("unknown node id " + std::to_string(n));
	return it->second;
}

std::optional<NodeId> WorkflowNet::find(std::string_view name) const {
	auto it = by_name_.find(name);
	if (it == by_name_.end()) return std::nullopt;
	return it->second;
}

std::string WorkflowNet::fresh_name(const std::string& proposed) const {
	if (!by_name_.count(proposed)) return proposed;
	return proposed + "#" + std::to_string(next_id_);
}

bool WorkflowNet::operator==(const WorkflowNet& other) const {
	return places_ == other.places_ && transitions_ == other.transitions_ &&
	       succ_ == other.succ_ && entry_ == other.entry_ && exit_ == other.exit_ &&
	       names_ == other.names_;
}

namespace {

// Reachable node set along arcs, optionally reversed, with the transient
// exit-to-entry closure arc added.
std::set<NodeId> closure_reach(const WorkflowNet& net, NodeId from, bool reversed) {
	std::set<NodeId> seen{from};
	std::deque<NodeId> queue{from};
	auto push = [&](NodeId n) {
		if (seen.insert(n).second) queue.push_back(n);
	};
	while (!queue.empty()) {
		const NodeId n = queue.front();
		queue.pop_front();
		const auto& next = reversed ? net.preset(n) : net.postset(n);
		for (NodeId m : next) push(m);
		if (!reversed && n == net.exit() && net.entry() != kNoNode) push(net.entry());
		if (reversed && n == net.entry() && net.exit() != kNoNode) push(net.exit());
	}
	return seen;
}

}

std::vector<Violation> validate(const WorkflowNet& net) {
	std::vector<Violation> out;
	auto report = [&](const std::string& clause, const std::string& message,
	                  std::vector<NodeId> nodes) {
		out.push_back({clause, message, std::move(nodes)});
	};

	const NodeId entry = net.entry();
	const NodeId exit = net.exit();
	if (entry == kNoNode) report("entry", "no entry place is set", {});
	if (exit == kNoNode) report("exit", "no exit place is set", {});
	if (entry != kNoNode && exit != kNoNode && entry == exit)
		report("entry-exit-distinct", "entry and exit must be distinct places", {entry});

	if (entry != kNoNode && !net.preset(entry).empty()) {
		std::vector<NodeId> offenders(net.preset(entry).begin(), net.preset(entry).end());
		report("entry-no-incoming",
		       "entry place '" + net.name(entry) + "' has incoming arcs", offenders);
	}
	if (exit != kNoNode && !net.postset(exit).empty()) {
		std::vector<NodeId> offenders(net.postset(exit).begin(), net.postset(exit).end());
		report("exit-no-outgoing", "exit place '" + net.name(exit) + "' has outgoing arcs",
		       offenders);
	}

	for (NodeId t : net.transitions()) {
		if (net.preset(t).empty())
			report("transition-inputs", "transition '" + net.name(t) + "' has no input places",
			       {t});
		if (net.postset(t).empty())
			report("transition-outputs",
			       "transition '" + net.name(t) + "' has no output places", {t});
	}

	if (entry != kNoNode && exit != kNoNode && entry != exit) {
		const std::set<NodeId> fwd = closure_reach(net, entry, false);
		const std::set<NodeId> bwd = closure_reach(net, entry, true);
		std::vector<NodeId> unreachable;
		for (NodeId p : net.places())
			if (!fwd.count(p) || !bwd.count(p)) unreachable.push_back(p);
		for (NodeId t : net.transitions())
			if (!fwd.count(t) || !bwd.count(t)) unreachable.push_back(t);
		if (!unreachable.empty()) {
			std::string msg = "not strongly connected under the exit-entry closure arc;"
			                  " disconnected:";
			for (NodeId n : unreachable) msg += " " + net.name(n);
			report("strongly-connected", msg, unreachable);
		}
	}
	return out;
}

bool Cluster::contains_place(NodeId p) const {
	return std::binary_search(places.begin(), places.end(), p);
}

bool Cluster::contains_transition(NodeId t) const {
	return std::binary_search(transitions.begin(), transitions.end(), t);
}

std::vector<NodeId> Cluster::nodes() const {
	std::vector<NodeId> all(places);
	all.insert(all.end(), transitions.begin(), transitions.end());
	std::sort(all.begin(), all.end());
	return all;
}

ClusterPartition::ClusterPartition(const WorkflowNet& net) {
	std::set<NodeId> todo;
	todo.insert(net.places().begin(), net.places().end());
	todo.insert(net.transitions().begin(), net.transitions().end());

	while (!todo.empty()) {
		const NodeId seed = *todo.begin();
		Cluster c;
		std::deque<NodeId> queue{seed};
		todo.erase(seed);
		std::set<NodeId> members{seed};
		auto visit = [&](NodeId n) {
			if (members.insert(n).second) {
				queue.push_back(n);
				todo.erase(n);
			}
		};
		while (!queue.empty()) {
			const NodeId n = queue.front();
			queue.pop_front();
			if (net.is_place(n)) {
				for (NodeId t : net.postset(n)) visit(t);
			} else {
				for (NodeId p : net.preset(n)) visit(p);
			}
		}
		for (NodeId n : members) {
			if (net.is_place(n))
				c.places.push_back(n);
			else
				c.transitions.push_back(n);
		}
		c.representative = *members.begin();
		clusters_.push_back(std::move(c));
	}

	std::sort(clusters_.begin(), clusters_.end(),
	          [](const Cluster& a, const Cluster& b) { return a.representative < b.representative; });
	for (std::size_t i = 0; i < clusters_.size(); ++i)
		for (NodeId n : clusters_[i].nodes()) index_[n] = i;
}

const Cluster& ClusterPartition::cluster_of(NodeId n) const {
	return clusters_[index_of(n)];
}

std::size_t ClusterPartition::index_of(NodeId n) const {
	auto it = index_.find(n);
	if (it == index_.end()) throw Error("node is not in the partition");
	return it->second;
}

bool is_free_choice_cluster(const WorkflowNet& net, const Cluster& c) {
	for (NodeId p : c.places)
		for (NodeId t : c.transitions)
			if (!net.has_arc(p, t)) return false;
	return true;
}

bool is_free_choice_net(const WorkflowNet& net) {
	const ClusterPartition parts(net);
	for (const Cluster& c : parts.clusters())
		if (!is_free_choice_cluster(net, c)) return false;
	return true;
}

bool is_acyclic(const WorkflowNet& net) {
	// Iterative DFS with colors; the closure arc is deliberately excluded.
	std::map<NodeId, int> color;  // 0 new, 1 open, 2 done
	std::vector<NodeId> all;
	for (NodeId p : net.places()) all.push_back(p);
	for (NodeId t : net.transitions()) all.push_back(t);
	for (NodeId start : all) {
		if (color[start]) continue;
		std::vector<std::pair<NodeId, std::set<NodeId>::const_iterator>> stack;
		color[start] = 1;
		stack.push_back({start, net.postset(start).begin()});
		while (!stack.empty()) {
			auto& [n, it] = stack.back();
			if (it == net.postset(n).end()) {
				color[n] = 2;
				stack.pop_back();
				continue;
			}
			const NodeId m = *it;
			++it;
			if (color[m] == 1) return false;
			if (color[m] == 0) {
				color[m] = 1;
				stack.push_back({m, net.postset(m).begin()});
			}
		}
	}
	return true;
}

bool unconditionally_enables(const WorkflowNet& net, NodeId t, const Cluster& c) {
	if (!net.is_transition(t)) return false;
	const std::set<NodeId>& post = net.postset(t);
	for (NodeId p : c.places)
		if (!post.count(p)) return false;
	return !c.places.empty();
}

Marking Marking::single(NodeId place, std::uint32_t n) {
	Marking m;
	if (n) m.counts_[place] = n;
	return m;
}

std::uint32_t Marking::count(NodeId place) const {
	auto it = counts_.find(place);
	return it == counts_.end() ? 0 : it->second;
}

void Marking::add(NodeId place, std::uint32_t n) {
	if (n) counts_[place] += n;
}

void Marking::remove(NodeId place, std::uint32_t n) {
	auto it = counts_.find(place);
	if (it == counts_.end() || it->second < n)
		throw Error("marking underflow on place " + std::to_string(place));
	it->second -= n;
	if (it->second == 0) counts_.erase(it);
}

std::uint32_t Marking::total() const {
	std::uint32_t n = 0;
	for (const auto& [p, c] : counts_) n += c;
	return n;
}

bool is_enabled(const WorkflowNet& net, const Marking& m, NodeId t) {
	for (NodeId p : net.preset(t))
		if (m.count(p) == 0) return false;
	return true;
}

Marking fire(const WorkflowNet& net, const Marking& m, NodeId t) {
	if (!net.is_transition(t)) throw Error("fire requires a transition");
	for (NodeId p : net.preset(t))
		if (m.count(p) == 0)
			throw NotEnabledError("transition '" + net.name(t) + "' is not enabled: place '" +
			                      net.name(p) + "' is unmarked");
	Marking next = m;
	for (NodeId p : net.preset(t)) next.remove(p);
	for (NodeId p : net.postset(t)) next.add(p);
	return next;
}

}
