#include "cwn/report.hpp"

#include <algorithm>
#include <atomic>
#include <chrono>
#include <cstdio>
#include <thread>

namespace cwn {

NetOutcome analyze_one(const ColoredWorkflowNet& cnet, const ReduceOptions& opts) {
	NetOutcome o;
	o.name = cnet.name;
	o.free_choice = is_free_choice_net(cnet.net);
	o.acyclic = is_acyclic(cnet.net);
	o.places_before = cnet.net.places().size();
	o.transitions_before = cnet.net.transitions().size();
	const auto t0 = std::chrono::steady_clock::now();
	try {
		ReduceOutcome r = reduce(cnet, opts);
		o.verdict = r.verdict;
		o.detail = r.detail;
		o.counts = r.trace.counts;
		o.places_after = r.net.net.places().size();
		o.transitions_after = r.net.net.transitions().size();
	} catch (const std::exception& e) {
		o.verdict = Verdict::Malformed;
		o.detail = e.what();
		o.places_after = o.places_before;
		o.transitions_after = o.transitions_before;
	}
	o.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
	return o;
}

std::string class_label(const NetOutcome& o) {
	std::string s = o.acyclic ? "acyclic " : "cyclic ";
	if (!o.free_choice)
		s += "not free-choice";
	else if (o.verdict == Verdict::CompletelyReduced)
		s += "free-choice sound";
	else
		s += "free-choice unsound";
	return s;
}

std::vector<NetOutcome> run_batch(const std::vector<ColoredWorkflowNet>& nets,
                                  const ReduceOptions& opts, unsigned workers) {
	std::vector<NetOutcome> out(nets.size());
	if (nets.empty()) return out;
	if (workers == 0) workers = std::max(1u, std::thread::hardware_concurrency());
	workers = std::min<unsigned>(workers, static_cast<unsigned>(nets.size()));

	std::atomic<std::size_t> next{0};
	auto work = [&] {
		for (;;) {
			const std::size_t i = next.fetch_add(1);
			if (i >= nets.size()) return;
			out[i] = analyze_one(nets[i], opts);
		}
	};
	std::vector<std::thread> pool;
	for (unsigned w = 1; w < workers; ++w) pool.emplace_back(work);
	work();
	for (std::thread& th : pool) th.join();
	return out;
}

namespace {

std::size_t lower_median(std::vector<std::size_t> xs) {
	std::sort(xs.begin(), xs.end());
	return xs[(xs.size() - 1) / 2];
}

std::string fmt1(double x) {
	char buf[32];
	std::snprintf(buf, sizeof buf, "%.1f", x);
	return buf;
}

}  // namespace

std::vector<StatsRow> aggregate(const std::vector<NetOutcome>& outcomes) {
	static const char* kOrder[] = {
		"acyclic free-choice sound", "acyclic free-choice unsound", "acyclic not free-choice",
		"cyclic free-choice sound",  "cyclic free-choice unsound",  "cyclic not free-choice",
	};
	std::vector<StatsRow> rows;
	for (const char* label : kOrder) {
		std::vector<const NetOutcome*> members;
		for (const NetOutcome& o : outcomes)
			if (class_label(o) == label) members.push_back(&o);
		if (members.empty()) continue;

		StatsRow row;
		row.label = label;
		row.count = members.size();
		std::vector<std::size_t> ps;
		std::vector<std::size_t> ts;
		double red_sum = 0.0;
		std::size_t red_n = 0;
		for (const NetOutcome* o : members) {
			ps.push_back(o->places_before);
			ts.push_back(o->transitions_before);
			row.p_avg += static_cast<double>(o->places_before);
			row.t_avg += static_cast<double>(o->transitions_before);
			row.p_max = std::max(row.p_max, o->places_before);
			row.t_max = std::max(row.t_max, o->transitions_before);
			row.rule_apps += o->counts.total();
			if (o->verdict != Verdict::CompletelyReduced) {
				const double before =
					static_cast<double>(o->places_before + o->transitions_before);
				const double after =
					static_cast<double>(o->places_after + o->transitions_after);
				if (before > 0) {
					red_sum += 100.0 * (1.0 - after / before);
					++red_n;
				}
			}
		}
		row.p_avg /= static_cast<double>(row.count);
		row.t_avg /= static_cast<double>(row.count);
		row.p_med = lower_median(ps);
		row.t_med = lower_median(ts);
		if (red_n > 0) row.reduced_by_pct = red_sum / static_cast<double>(red_n);
		rows.push_back(std::move(row));
	}
	return rows;
}

std::string render_report_text(const std::vector<NetOutcome>& outcomes) {
	const std::vector<StatsRow> rows = aggregate(outcomes);
	std::vector<std::vector<std::string>> cells;
	cells.push_back({"class", "nets", "|P| avg", "med", "max", "|T| avg", "med", "max",
	                 "red. by", "rule appl."});
	for (const StatsRow& r : rows) {
		cells.push_back({r.label, std::to_string(r.count), fmt1(r.p_avg),
		                 std::to_string(r.p_med), std::to_string(r.p_max), fmt1(r.t_avg),
		                 std::to_string(r.t_med), std::to_string(r.t_max),
		                 r.reduced_by_pct < 0 ? "-" : fmt1(r.reduced_by_pct) + "%",
		                 std::to_string(r.rule_apps)});
	}
	std::vector<std::size_t> widths(cells[0].size(), 0);
	for (const auto& row : cells)
		for (std::size_t i = 0; i < row.size(); ++i)
			widths[i] = std::max(widths[i], row[i].size());
	std::string out;
	for (const auto& row : cells) {
		for (std::size_t i = 0; i < row.size(); ++i) {
			if (i) out += "  ";
			out += row[i];
			if (i + 1 < row.size()) out.append(widths[i] - row[i].size(), ' ');
		}
		out += '\n';
	}
	return out;
}

std::string render_report_csv(const std::vector<NetOutcome>& outcomes) {
	std::string out = "class,count,p_avg,p_med,p_max,t_avg,t_med,t_max,red_by_pct,rule_apps\n";
	for (const StatsRow& r : aggregate(outcomes)) {
		out += "\"" + r.label + "\",";
		out += std::to_string(r.count) + ",";
		out += fmt1(r.p_avg) + "," + std::to_string(r.p_med) + "," + std::to_string(r.p_max) + ",";
		out += fmt1(r.t_avg) + "," + std::to_string(r.t_med) + "," + std::to_string(r.t_max) + ",";
		out += (r.reduced_by_pct < 0 ? std::string() : fmt1(r.reduced_by_pct)) + ",";
		out += std::to_string(r.rule_apps) + "\n";
	}
	return out;
}

}
