// Copyright 2026 The SLU Engine Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "slu/grammar/dataset.h"

#include <fstream>
#include <set>
#include <sstream>

#include <json.hpp>

#include "slu/base/errors.h"
#include "slu/wfst/text-io.h"

namespace slu::grammar {
namespace {

using nlohmann::json;

std::size_t LineOf(const std::string &text, std::size_t offset) {
  std::size_t line = 1;
  for (std::size_t i = 0; i < offset && i < text.size(); ++i) line += text[i] == '\n';
  return line;
}

// Best-effort line of a string value inside the document.
std::size_t LineOfValue(const std::string &text, const std::string &value) {
  std::string quoted = json(value).dump();
  auto pos = text.find(quoted);
  return pos == std::string::npos ? 0 : LineOf(text, pos);
}

[[noreturn]] void Fail(const std::string &source, std::size_t line, const std::string &what) {
  std::string where = source;
  if (line > 0) where += ":" + std::to_string(line);
  throw SchemaError(where + ": " + what);
}

SlotDefinition ParseSlot(const std::string &name, const json &j, const std::string &text,
                         const std::filesystem::path &base_dir, const std::string &source) {
  if (!j.is_object()) Fail(source, 0, "slots/" + name + " must be an object");
  SlotDefinition slot;
  slot.name = name;
  std::string kind = j.value("kind", "gazetteer");
  if (kind == "gazetteer") {
    slot.kind = SlotKind::kGazetteer;
    if (!j.contains("values") || !j["values"].is_array()) {
      Fail(source, 0, "slots/" + name + "/values must be an array");
    }
    for (const auto &v : j["values"]) {
      if (!v.is_string()) Fail(source, 0, "slots/" + name + "/values must hold strings");
      slot.values.push_back(v.get<std::string>());
    }
  } else if (kind == "grammar") {
    slot.kind = SlotKind::kGrammar;
    slot.grammar_symbols = std::make_shared<wfst::SymbolTable>();
    std::string att;
    if (j.contains("grammar") && j["grammar"].is_string()) {
      att = j["grammar"].get<std::string>();
    } else if (j.contains("grammar_file") && j["grammar_file"].is_string()) {
      std::filesystem::path p = j["grammar_file"].get<std::string>();
      if (p.is_relative()) p = base_dir / p;
      std::ifstream in(p);
      if (!in) Fail(source, LineOfValue(text, j["grammar_file"]), "cannot read " + p.string());
      std::ostringstream buf;
      buf << in.rdbuf();
      att = buf.str();
    } else {
      Fail(source, 0, "slots/" + name + " needs grammar_file");
    }
    std::istringstream in(att);
    try {
      slot.grammar = wfst::ReadAttAddingSymbols(in, slot.grammar_symbols);
    } catch (const ParseError &e) {
      Fail(source, 0, "grammar of slot " + name + ": " + e.what());
    }
  } else {
    Fail(source, LineOfValue(text, kind), "slots/" + name + "/kind must be gazetteer or grammar");
  }
  return slot;
}

}  // namespace

Dataset ParseDataset(const std::string &text, const std::filesystem::path &base_dir,
                     const std::string &source) {
  json doc;
  try {
    doc = json::parse(text);
  } catch (const json::parse_error &e) {
    Fail(source, LineOf(text, e.byte), std::string("invalid JSON: ") + e.what());
  }
  if (!doc.is_object()) Fail(source, 1, "top level must be an object");
  Dataset ds;
  if (doc.contains("language")) {
    if (!doc["language"].is_string()) Fail(source, 0, "language must be a string");
    ds.language = doc["language"].get<std::string>();
  }
  if (doc.contains("slots")) {
    if (!doc["slots"].is_object()) Fail(source, 0, "slots must be an object");
    for (const auto &[name, j] : doc["slots"].items()) {
      ds.slots[name] = ParseSlot(name, j, text, base_dir, source);
    }
  }
  if (!doc.contains("intents") || !doc["intents"].is_object()) {
    Fail(source, 0, "intents must be an object");
  }
  for (const auto &[name, j] : doc["intents"].items()) {
    if (!j.is_object() || !j.contains("utterances") || !j["utterances"].is_array()) {
      Fail(source, 0, "intents/" + name + "/utterances must be an array");
    }
    auto &list = ds.intents[name];
    for (const auto &u : j["utterances"]) {
      if (!u.is_string()) Fail(source, 0, "intents/" + name + "/utterances must hold strings");
      const std::string raw = u.get<std::string>();
      try {
        list.push_back(ParseAnnotated(raw, ds.normalizer));
      } catch (const AnnotationError &e) {
        Fail(source, LineOfValue(text, raw), "intent " + name + ": " + e.what());
      }
      for (const auto &span : list.back().Slots()) {
        if (!ds.slots.count(span.slot)) {
          Fail(source, LineOfValue(text, raw), "undeclared slot '" + span.slot + "'");
        }
      }
    }
  }
  try {
    ValidateDataset(ds);
  } catch (const SchemaError &e) {
    Fail(source, 0, e.what());
  }
  return ds;
}

Dataset LoadDataset(const std::filesystem::path &path) {
  std::ifstream in(path);
  if (!in) throw SchemaError(path.string() + ": cannot open dataset");
  std::ostringstream buf;
  buf << in.rdbuf();
  return ParseDataset(buf.str(), path.parent_path(), path.string());
}

void ValidateDataset(const Dataset &dataset) {
  if (dataset.intents.empty()) throw SchemaError("dataset has no intents");
  for (const auto &[name, utterances] : dataset.intents) {
    if (utterances.empty()) throw SchemaError("intent " + name + " has no utterances");
    for (const auto &u : utterances) {
      if (u.Words().empty()) throw SchemaError("intent " + name + " has an empty utterance");
      for (const auto &span : u.Slots()) {
        if (!dataset.slots.count(span.slot)) {
          throw SchemaError("undeclared slot '" + span.slot + "'");
        }
      }
    }
  }
  for (const auto &[name, slot] : dataset.slots) {
    if (slot.kind != SlotKind::kGrammar) continue;
    if (!slot.grammar.IsAcceptor()) throw SchemaError("grammar of slot " + name + " is not an acceptor");
    for (wfst::StateId s = 0; s < slot.grammar.NumStates(); ++s) {
      for (const auto &a : slot.grammar.Arcs(s)) {
        if (a.ilabel == wfst::kEpsilon) {
          throw SchemaError("grammar of slot " + name + " has epsilon arcs");
        }
      }
    }
  }
}

std::string DatasetToJson(const Dataset &dataset) {
  json doc;
  doc["language"] = dataset.language;
  doc["intents"] = json::object();
  for (const auto &[name, utterances] : dataset.intents) {
    json list = json::array();
    for (const auto &u : utterances) list.push_back(Render(u));
    doc["intents"][name]["utterances"] = list;
  }
  doc["slots"] = json::object();
  for (const auto &[name, slot] : dataset.slots) {
    if (slot.kind == SlotKind::kGazetteer) {
      doc["slots"][name] = {{"kind", "gazetteer"}, {"values", slot.values}};
    } else {
      wfst::Fst g = slot.grammar;
      g.SetInputSymbols(slot.grammar_symbols);
      g.SetOutputSymbols(slot.grammar_symbols);
      std::ostringstream att;
      wfst::WriteAtt(g, att);
      doc["slots"][name] = {{"kind", "grammar"}, {"grammar", att.str()}};
    }
  }
  return doc.dump(1);
}

std::vector<Tokens> AbstractPatterns(const Dataset &dataset) {
  std::vector<Tokens> out;
  for (const auto &[name, utterances] : dataset.intents) {
    for (const auto &u : utterances) out.push_back(u.Pattern());
  }
  return out;
}

std::vector<Tokens> SlotCorpus(const Dataset &dataset, const std::string &slot) {
  std::vector<Tokens> out;
  auto it = dataset.slots.find(slot);
  if (it == dataset.slots.end()) throw DefinitionError("unknown slot '" + slot + "'");
  for (const auto &v : it->second.values) {
    Tokens t = Normalize(v, dataset.normalizer);
    if (!t.empty()) out.push_back(std::move(t));
  }
  for (const auto &[name, utterances] : dataset.intents) {
    for (const auto &u : utterances) {
      for (const auto &s : u.segments) {
        if (s.slot == slot) out.push_back(s.tokens);
      }
    }
  }
  return out;
}

}  // namespace slu::grammar
