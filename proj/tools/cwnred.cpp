#include <filesystem>
#include <fstream>
#include <iostream>
#include <string>
#include <vector>

#include "CLI11.hpp"

#include "cwn/format.hpp"
#include "cwn/oracle.hpp"
#include "cwn/report.hpp"

namespace {

using namespace cwn;

constexpr int kOk = 0;
constexpr int kInputError = 1;
constexpr int kCapExceeded = 3;

// Loads a net file and applies a command-line mode override. Tightening to
// strict re-checks left-totality, since the file may have been written
// permissively.
ColoredWorkflowNet load_net(const std::string& path, const std::string& mode) {
	ColoredWorkflowNet cnet = read_net_file(path);
	if (mode == "permissive") cnet.mode = Mode::Permissive;
	if (mode == "strict") {
		cnet.mode = Mode::Strict;
		for (NodeId t : cnet.net.transitions()) {
			const Transformer& tr = cnet.transformer(t);
			std::vector<ColorSet> sets = cnet.color_sets_for(tr.inputs());
			if (!check_left_total(tr, sets)) {
				auto missing = find_uncovered_input(tr, sets);
				throw Error("strict mode: transformer of '" + cnet.net.name(t) +
				            "' is not left-total; first uncovered input: " +
				            to_string(*missing));
			}
		}
	}
	return cnet;
}

bool require_valid(const ColoredWorkflowNet& cnet) {
	std::vector<Violation> vs = validate(cnet);
	for (const Violation& v : vs) std::cerr << "invalid net: " << v.message << "\n";
	return vs.empty();
}

const char* verdict_word(Verdict v) {
	switch (v) {
		case Verdict::CompletelyReduced: return "SOUND";
		case Verdict::Unsound: return "UNSOUND";
		case Verdict::Irreducible: return "IRREDUCIBLE";
		case Verdict::Malformed: return "MALFORMED";
	}
	return "MALFORMED";
}

void write_file(const std::string& path, const std::string& content) {
	std::ofstream out(path, std::ios::binary);
	if (!out) throw Error("cannot write file: " + path);
	out << content;
}

void print_counts(std::ostream& os, const RuleCounts& c) {
	os << "rules: merge=" << c.merge << " iteration=" << c.iteration
	   << " shortcut=" << c.shortcut << " d-shortcut=" << c.d_shortcut
	   << " total=" << c.total() << "\n";
}

int cmd_validate(const std::string& path, const std::string& mode) {
	ColoredWorkflowNet cnet = load_net(path, mode);
	std::vector<Violation> vs = validate(cnet);
	if (vs.empty()) {
		std::cout << "valid: " << cnet.net.places().size() << " places, "
		          << cnet.net.transitions().size() << " transitions, "
		          << cnet.net.arc_count() << " arcs\n";
	} else {
		for (const Violation& v : vs) std::cout << "violation: " << v.message << "\n";
	}
	return kOk;
}

int cmd_check(const std::string& path, const std::string& mode, const std::string& trace_path) {
	ColoredWorkflowNet cnet = load_net(path, mode);
	if (!require_valid(cnet)) return kInputError;
	ReduceOutcome r = reduce(cnet);
	std::cout << verdict_word(r.verdict) << "\n";
	if (!r.detail.empty()) std::cout << "detail: " << r.detail << "\n";
	print_counts(std::cout, r.trace.counts);
	if (!trace_path.empty()) write_file(trace_path, trace_to_json(r.trace));
	return kOk;
}

int cmd_reduce(const std::string& path, const std::string& mode, const std::string& emit_path,
               const std::string& trace_path) {
	ColoredWorkflowNet cnet = load_net(path, mode);
	if (!require_valid(cnet)) return kInputError;
	ReduceOutcome r = reduce(cnet);
	std::cerr << verdict_word(r.verdict) << "\n";
	if (!r.detail.empty()) std::cerr << "detail: " << r.detail << "\n";
	print_counts(std::cerr, r.trace.counts);
	const std::string text = emit_native(r.net);
	if (emit_path.empty())
		std::cout << text;
	else
		write_file(emit_path, text);
	if (!trace_path.empty()) write_file(trace_path, trace_to_json(r.trace));
	return kOk;
}

int cmd_summarize(const std::string& path, const std::string& mode) {
	ColoredWorkflowNet cnet = load_net(path, mode);
	if (!require_valid(cnet)) return kInputError;
	ReduceOutcome r = reduce(cnet);
	if (r.summary) {
		std::cout << summary_to_text(*r.summary);
	} else {
		std::cout << verdict_word(r.verdict) << "\n";
		if (!r.detail.empty()) std::cout << "detail: " << r.detail << "\n";
	}
	return kOk;
}

int cmd_oracle(const std::string& path, const std::string& mode, std::size_t cap, unsigned k,
               bool want_summary) {
	ColoredWorkflowNet cnet = load_net(path, mode);
	if (!require_valid(cnet)) return kInputError;
	OracleOptions opts;
	opts.state_cap = cap;
	SoundnessReport rep = k == 0 ? oracle_is_sound(cnet, opts)
	                             : oracle_is_k_sound(cnet, k, opts);
	if (rep.capped) {
		std::cout << "CAPPED after " << rep.states_explored << " states\n";
		return kCapExceeded;
	}
	if (k == 0)
		std::cout << (rep.sound ? "SOUND" : "UNSOUND") << "\n";
	else
		std::cout << k << (rep.sound ? "-SOUND" : "-UNSOUND") << "\n";
	if (!rep.reason.empty()) std::cout << "reason: " << rep.reason << "\n";
	for (const WitnessStep& step : rep.witness) std::cout << "  " << step.text << "\n";
	if (want_summary) {
		SummaryReport sum = oracle_summary(cnet, opts);
		if (sum.capped) {
			std::cout << "CAPPED after " << sum.states_explored << " states\n";
			return kCapExceeded;
		}
		for (const auto& [in, outs] : sum.pairs) {
			if (outs.empty()) {
				std::cout << to_string(in) << " -> (no completion)\n";
				continue;
			}
			for (const ColorValue& out : outs)
				std::cout << to_string(in) << " -> " << to_string(out) << "\n";
		}
	}
	return kOk;
}

int cmd_equiv(const std::string& path, const std::string& mode, std::size_t cap) {
	ColoredWorkflowNet cnet = load_net(path, mode);
	if (!require_valid(cnet)) return kInputError;
	ReduceOutcome r = reduce(cnet);
	std::cout << "reduction: " << verdict_word(r.verdict) << "\n";
	OracleOptions opts;
	opts.state_cap = cap;
	EquivalenceReport eq = check_equivalence(cnet, r.net, opts);
	if (eq.capped) {
		std::cout << "CAPPED: " << (eq.detail.empty() ? "state cap exceeded" : eq.detail)
		          << "\n";
		return kCapExceeded;
	}
	if (eq.equivalent)
		std::cout << "equivalent\n";
	else
		std::cout << "not equivalent: " << eq.detail << "\n";
	return kOk;
}

int cmd_batch(const std::string& dir, const std::string& mode, const std::string& fmt) {
	namespace fs = std::filesystem;
	std::vector<std::string> paths;
	for (const auto& entry : fs::directory_iterator(dir)) {
		if (!entry.is_regular_file()) continue;
		std::string ext = entry.path().extension().string();
		for (char& ch : ext) ch = static_cast<char>(std::tolower(static_cast<unsigned char>(ch)));
		if (ext == ".cwf" || ext == ".pnml" || ext == ".xml")
			paths.push_back(entry.path().string());
	}
	std::sort(paths.begin(), paths.end());

	std::vector<ColoredWorkflowNet> nets;
	for (const std::string& p : paths) {
		try {
			ColoredWorkflowNet cnet = load_net(p, mode);
			if (!validate(cnet).empty()) {
				std::cerr << "skipping " << p << ": not a valid workflow net\n";
				continue;
			}
			nets.push_back(std::move(cnet));
		} catch (const Error& e) {
			std::cerr << "skipping " << p << ": " << e.what() << "\n";
		}
	}
	std::vector<NetOutcome> outcomes = run_batch(nets);
	std::cout << (fmt == "csv" ? render_report_csv(outcomes) : render_report_text(outcomes));
	return kOk;
}

}  // namespace

int main(int argc, char** argv) {
	CLI::App app{"cwnred: reduction-based soundness and summary analysis of "
	             "colored workflow nets"};
	app.require_subcommand(1);

	std::string file;
	std::string dir;
	std::string mode;
	std::string emit_path;
	std::string trace_path;
	std::string report_fmt = "text";
	std::size_t cap = 250000;
	unsigned k = 0;
	bool want_summary = false;

	const auto mode_check = CLI::IsMember({"strict", "permissive"});

	CLI::App* validate_cmd = app.add_subcommand("validate", "check workflow-net shape");
	validate_cmd->add_option("file", file, "net file")->required()->check(CLI::ExistingFile);
	validate_cmd->add_option("--mode", mode, "override the declared mode")->check(mode_check);

	CLI::App* check_cmd = app.add_subcommand("check", "decide soundness by reduction");
	check_cmd->add_option("file", file, "net file")->required()->check(CLI::ExistingFile);
	check_cmd->add_option("--mode", mode, "override the declared mode")->check(mode_check);
	check_cmd->add_option("--trace", trace_path, "write the rule trace as JSON");

	CLI::App* reduce_cmd = app.add_subcommand("reduce", "reduce and print the residual net");
	reduce_cmd->add_option("file", file, "net file")->required()->check(CLI::ExistingFile);
	reduce_cmd->add_option("--mode", mode, "override the declared mode")->check(mode_check);
	reduce_cmd->add_option("--emit", emit_path, "write the residual net to a file");
	reduce_cmd->add_option("--trace", trace_path, "write the rule trace as JSON");

	CLI::App* sum_cmd = app.add_subcommand("summarize", "print the input/output summary");
	sum_cmd->add_option("file", file, "net file")->required()->check(CLI::ExistingFile);
	sum_cmd->add_option("--mode", mode, "override the declared mode")->check(mode_check);

	CLI::App* oracle_cmd =
		app.add_subcommand("oracle", "explore the state space exhaustively");
	oracle_cmd->add_option("file", file, "net file")->required()->check(CLI::ExistingFile);
	oracle_cmd->add_option("--mode", mode, "override the declared mode")->check(mode_check);
	oracle_cmd->add_option("--cap", cap, "state exploration cap");
	oracle_cmd->add_option("--k", k, "check k-soundness instead of soundness");
	oracle_cmd->add_flag("--summary", want_summary, "also print the summary relation");

	CLI::App* equiv_cmd =
		app.add_subcommand("equiv", "compare the residual net against the oracle");
	equiv_cmd->add_option("file", file, "net file")->required()->check(CLI::ExistingFile);
	equiv_cmd->add_option("--mode", mode, "override the declared mode")->check(mode_check);
	equiv_cmd->add_option("--cap", cap, "state exploration cap");

	CLI::App* batch_cmd = app.add_subcommand("batch", "analyze a directory of nets");
	batch_cmd->add_option("dir", dir, "directory of net files")
		->required()
		->check(CLI::ExistingDirectory);
	batch_cmd->add_option("--mode", mode, "override the declared mode")->check(mode_check);
	batch_cmd->add_option("--report", report_fmt, "report format")
		->check(CLI::IsMember({"text", "csv"}));

	CLI11_PARSE(app, argc, argv);

	try {
		if (app.got_subcommand(validate_cmd)) return cmd_validate(file, mode);
		if (app.got_subcommand(check_cmd)) return cmd_check(file, mode, trace_path);
		if (app.got_subcommand(reduce_cmd)) return cmd_reduce(file, mode, emit_path, trace_path);
		if (app.got_subcommand(sum_cmd)) return cmd_summarize(file, mode);
		if (app.got_subcommand(oracle_cmd)) return cmd_oracle(file, mode, cap, k, want_summary);
		if (app.got_subcommand(equiv_cmd)) return cmd_equiv(file, mode, cap);
		if (app.got_subcommand(batch_cmd)) return cmd_batch(dir, mode, report_fmt);
	} catch (const Error& e) {
		std::cerr << "error: " << e.what() << "\n";
		return kInputError;
	} catch (const std::exception& e) {
		std::cerr << "error: " << e.what() << "\n";
		return kInputError;
	}
	return kInputError;
}
