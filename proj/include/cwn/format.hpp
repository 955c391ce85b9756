#pragma once

#include <string>

#include "cwn/colored_net.hpp"
#include "cwn/rules.hpp"

namespace cwn {

/// Parses the native colored-net text format.
///
/// The format is line-oriented; `#` starts a comment. Directives:
///
///   net NAME
///   mode strict|permissive
///   place NAME { VALUE VALUE ... }
///   trans NAME : IN IN ... -> OUT OUT ...
///   pair TRANS : VALUE ... -> VALUE ...
///   entry NAME
///   exit NAME
///
/// A place without a braced value list carries the unit color set {(*)}.
/// Values are comma-separated atoms in parentheses, e.g. (A,4); a bare
/// atom abbreviates an arity-1 value and `*` is the unit atom. Pair
/// components follow the written order of the owning trans directive.
/// A transition with no pair lines whose places are all unit-colored
/// gets the single unit pair. Names with characters outside
/// [A-Za-z_][A-Za-z0-9_]* are double-quoted with backslash escapes.
/// Entry/exit directives may be omitted when the net has exactly one
/// place without inputs and one without outputs.
///
/// Throws ParseError on syntax or semantic errors; in strict mode a
/// transformer that is not left-total is a load error naming the first
/// uncovered input tuple.
ColoredWorkflowNet parse_native(const std::string& text);

/// Reads and parses a native-format file. Throws Error when the file
/// cannot be read.
ColoredWorkflowNet parse_native_file(const std::string& path);

/// Renders a net in canonical native form: nodes in ascending id order,
/// pairs in their stored canonical order, every value parenthesized.
/// Emission then re-parsing reproduces the net up to node numbering, and
/// exactly when ids are already contiguous in declaration order.
std::string emit_native(const ColoredWorkflowNet& cnet);

/// Imports the structural subset of PNML: place, transition, and arc
/// elements; namespaces, graphics, inscriptions, and markings are
/// ignored. The unique source place becomes the entry, the unique sink
/// the exit; every place carries the unit color set and every transition
/// one unit pair. Throws ParseError when the structure is not a valid
/// workflow net.
ColoredWorkflowNet import_pnml(const std::string& text);

/// Reads and imports a PNML file. Throws Error when the file cannot be
/// read.
ColoredWorkflowNet import_pnml_file(const std::string& path);

/// Loads a net file, dispatching on extension: .pnml and .xml go through
/// the PNML importer, everything else through the native parser.
ColoredWorkflowNet read_net_file(const std::string& path);

/// Serializes a reduction trace as JSON: the step list with rule names,
/// operand/created/removed node ids, post-step sizes, and the final rule
/// counts.
std::string trace_to_json(const ReductionTrace& trace);

/// Renders a summary relation one pair per line, `INS -> OUTS`, in the
/// transformer's canonical pair order.
std::string summary_to_text(const Transformer& summary);

}
