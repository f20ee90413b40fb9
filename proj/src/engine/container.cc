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

#include "slu/engine/container.h"

#include <bit>
#include <cstring>

#include "slu/base/errors.h"

namespace slu::engine {
namespace {

void PutU64(std::string *out, std::uint64_t v) {
  for (int i = 0; i < 8; ++i) out->push_back(static_cast<char>((v >> (8 * i)) & 0xff));
}

void PutU32(std::string *out, std::uint32_t v) {
  for (int i = 0; i < 4; ++i) out->push_back(static_cast<char>((v >> (8 * i)) & 0xff));
}

void PutDouble(std::string *out, double d) { PutU64(out, std::bit_cast<std::uint64_t>(d)); }

class Reader {
 public:
  explicit Reader(std::string_view bytes) : bytes_(bytes) {}

  std::uint64_t U64() {
    Need(8);
    std::uint64_t v = 0;
    for (int i = 0; i < 8; ++i) v |= std::uint64_t(static_cast<unsigned char>(bytes_[pos_ + i])) << (8 * i);
    pos_ += 8;
    return v;
  }

  std::uint32_t U32() {
    Need(4);
    std::uint32_t v = 0;
    for (int i = 0; i < 4; ++i) v |= std::uint32_t(static_cast<unsigned char>(bytes_[pos_ + i])) << (8 * i);
    pos_ += 4;
    return v;
  }

  double Double() { return std::bit_cast<double>(U64()); }

  std::string_view Bytes(std::uint64_t n) {
    Need(n);
    auto s = bytes_.substr(pos_, n);
    pos_ += n;
    return s;
  }

  bool Done() const { return pos_ == bytes_.size(); }

 private:
  void Need(std::uint64_t n) const {
    if (bytes_.size() - pos_ < n) throw SchemaError("bundle: truncated data");
  }

  std::string_view bytes_;
  std::size_t pos_ = 0;
};

}  // namespace

void ContainerWriter::Add(std::string name, std::string payload) {
  sections_[std::move(name)] = std::move(payload);
}

std::string ContainerWriter::Finish() const {
  std::string out(kBundleMagic, sizeof(kBundleMagic) - 1);
  PutU32(&out, kBundleVersion);
  PutU32(&out, static_cast<std::uint32_t>(sections_.size()));
  for (const auto &[name, payload] : sections_) {
    PutU64(&out, name.size());
    out += name;
    PutU64(&out, payload.size());
    out += payload;
  }
  return out;
}

std::map<std::string, std::string> ReadContainer(std::string_view bytes) {
  Reader in(bytes);
  if (in.Bytes(sizeof(kBundleMagic) - 1) != std::string_view(kBundleMagic)) {
    throw SchemaError("bundle: bad magic");
  }
  const std::uint32_t version = in.U32();
  if (version != kBundleVersion) {
    throw SchemaError("bundle: unsupported version " + std::to_string(version));
  }
  std::map<std::string, std::string> sections;
  for (std::uint32_t n = in.U32(); n > 0; --n) {
    std::string name(in.Bytes(in.U64()));
    std::string payload(in.Bytes(in.U64()));
    if (!sections.emplace(std::move(name), std::move(payload)).second) {
      throw SchemaError("bundle: duplicate section");
    }
  }
  if (!in.Done()) throw SchemaError("bundle: trailing bytes");
  return sections;
}

std::string EncodeFst(const wfst::Fst &fst) {
  std::string out;
  PutU32(&out, static_cast<std::uint32_t>(fst.Start()));
  PutU32(&out, static_cast<std::uint32_t>(fst.NumStates()));
  for (wfst::StateId s = 0; s < fst.NumStates(); ++s) {
    PutDouble(&out, fst.Final(s).Value());
    PutU32(&out, static_cast<std::uint32_t>(fst.NumArcs(s)));
    for (const auto &a : fst.Arcs(s)) {
      PutU32(&out, static_cast<std::uint32_t>(a.ilabel));
      PutU32(&out, static_cast<std::uint32_t>(a.olabel));
      PutDouble(&out, a.weight.Value());
      PutU32(&out, static_cast<std::uint32_t>(a.nextstate));
    }
  }
  return out;
}

wfst::Fst DecodeFst(std::string_view bytes) {
  Reader in(bytes);
  wfst::Fst fst;
  const auto start = static_cast<wfst::StateId>(in.U32());
  const auto n = static_cast<wfst::StateId>(in.U32());
  if (n < 0 || (start != wfst::kNoState && (start < 0 || start >= n))) {
    throw SchemaError("bundle: bad machine header");
  }
  fst.ReserveStates(n);
  for (wfst::StateId s = 0; s < n; ++s) fst.AddState();
  for (wfst::StateId s = 0; s < n; ++s) {
    fst.SetFinal(s, wfst::Weight(in.Double()));
    const std::uint32_t arcs = in.U32();
    fst.MutableArcs(s).reserve(arcs);
    for (std::uint32_t i = 0; i < arcs; ++i) {
      wfst::Arc a;
      a.ilabel = static_cast<wfst::Label>(in.U32());
      a.olabel = static_cast<wfst::Label>(in.U32());
      a.weight = wfst::Weight(in.Double());
      a.nextstate = static_cast<wfst::StateId>(in.U32());
      if (a.nextstate < 0 || a.nextstate >= n) throw SchemaError("bundle: bad arc target");
      fst.AddArc(s, a);
    }
  }
  if (start != wfst::kNoState) fst.SetStart(start);
  if (!in.Done()) throw SchemaError("bundle: trailing machine bytes");
  return fst;
}

}  // namespace slu::engine
