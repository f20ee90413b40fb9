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

#ifndef SLU_ENGINE_CONTAINER_H_
#define SLU_ENGINE_CONTAINER_H_

#include <cstdint>
#include <map>
#include <string>
#include <string_view>

#include "slu/wfst/fst.h"

namespace slu::engine {

inline constexpr char kBundleMagic[] = "SLUBNDL";
inline constexpr std::uint32_t kBundleVersion = 1;

// Single-file layout: magic, version, section count, then per section a
// length-prefixed name and a length-prefixed payload. Integers are little
// endian.
class ContainerWriter {
 public:
  void Add(std::string name, std::string payload);
  std::string Finish() const;

 private:
  std::map<std::string, std::string> sections_;
};

// Throws SchemaError on a bad magic, an unsupported version or truncation.
std::map<std::string, std::string> ReadContainer(std::string_view bytes);

// Binary machine encoding: start, state count, then per state its final
// weight and arcs. Symbol tables are not stored.
std::string EncodeFst(const wfst::Fst &fst);
wfst::Fst DecodeFst(std::string_view bytes);

}  // namespace slu::engine

#endif  // SLU_ENGINE_CONTAINER_H_
