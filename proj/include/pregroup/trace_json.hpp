#pragma once

#include <stdexcept>
#include <string>

#include "json.hpp"
#include "pregroup/engine.hpp"

namespace pregroup {

// Key order in emitted JSON is fixed, so byte-identical output only
// depends on the trace itself.
using TraceJson = nlohmann::ordered_json;

struct TraceError : std::runtime_error {
  explicit TraceError(const std::string& m) : std::runtime_error(m) {}
};

// Serialises a search outcome.  Steps carry rule, path, position, a
// rule-specific payload and the rendered word after the step.  Insertion
// payloads store the symbol and the base degree only; the pair orientation
// is a function of the insertion point and is restored on decode.
TraceJson trace_to_json(const Word& input, SearchStatus status,
                        const Derivation* derivation);

// One step in the trace schema: rule, path, position, payload, after.
TraceJson step_to_json(const Step& s, const Word& after);
// Just the payload object of the schema.
TraceJson step_payload_json(const Step& s);

struct DecodedTrace {
  Word input;
  SearchStatus status = SearchStatus::Unknown;
  Derivation derivation;  // start is the input word
  bool normal = false;
};

// Parses and structurally checks a trace; throws TraceError on malformed
// schema, unknown rules, or payloads that do not fit their rule.  Licensing
// is checked separately by validate().
DecodedTrace trace_from_json(const TraceJson& j);

}  // namespace pregroup
