// Copyright 2026 The plsbench Authors.
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

#include "binio.hpp"
#include "pls/checksum.hpp"
#include "pls/error.hpp"
#include "pls/forest.hpp"

namespace pls {

namespace {

constexpr std::uint16_t kModelVersion = 1;

}  // namespace

std::vector<std::uint8_t> serialize_model(const ForestModel& model) {
  binio::Writer w;
  w.bytes("PLSF");
  w.u16(kModelVersion);
  w.u16(0);
  w.u32(static_cast<std::uint32_t>(model.hyperparams.n_trees));
  w.i32(model.hyperparams.max_depth);
  w.u32(static_cast<std::uint32_t>(model.hyperparams.min_samples_leaf));
  w.u32(static_cast<std::uint32_t>(model.hyperparams.features_per_split));
  w.u32(model.feature_count);
  w.u64(model.feature_hash);
  w.u64(model.seed);
  w.u64(model.split_seed);
  w.f64(model.split_ratio);
  w.u32(static_cast<std::uint32_t>(model.trees.size()));
  for (const auto& tree : model.trees) {
    w.u32(static_cast<std::uint32_t>(tree.nodes.size()));
    for (const auto& n : tree.nodes) {
      w.i32(n.feature);
      w.f64(n.threshold);
      w.i32(n.left);
      w.i32(n.right);
      w.u32(n.counts[0]);
      w.u32(n.counts[1]);
    }
  }
  w.u32(crc32(w.buffer()));
  return std::move(w.buffer());
}

ForestModel parse_model(std::span<const std::uint8_t> bytes) {
  if (bytes.size() < 12) throw FormatError("header", "file truncated");
  const std::size_t body = bytes.size() - 4;
  binio::Reader r(bytes.first(body));
  if (r.bytes(4, "magic") != "PLSF") throw FormatError("magic", "expected \"PLSF\"");
  const auto version = r.u16("version");
  if (version != kModelVersion) throw FormatError("version", "unsupported version " + std::to_string(version));
  r.u16("reserved");
  const std::uint32_t stored = static_cast<std::uint32_t>(bytes[body]) | static_cast<std::uint32_t>(bytes[body + 1]) << 8 |
                               static_cast<std::uint32_t>(bytes[body + 2]) << 16 |
                               static_cast<std::uint32_t>(bytes[body + 3]) << 24;

  ForestModel m;
  m.hyperparams.n_trees = static_cast<int>(r.u32("hyperparams.n_trees"));
  m.hyperparams.max_depth = r.i32("hyperparams.max_depth");
  m.hyperparams.min_samples_leaf = static_cast<int>(r.u32("hyperparams.min_samples_leaf"));
  m.hyperparams.features_per_split = static_cast<int>(r.u32("hyperparams.features_per_split"));
  m.feature_count = r.u32("feature_count");
  m.feature_hash = r.u64("feature_hash");
  m.seed = r.u64("seed");
  m.split_seed = r.u64("split_seed");
  m.split_ratio = r.f64("split_ratio");
  const std::uint32_t n_trees = r.u32("n_trees");
  if (n_trees != static_cast<std::uint32_t>(m.hyperparams.n_trees))
    throw FormatError("n_trees", "tree count disagrees with hyperparameters");
  m.trees.resize(n_trees);
  for (auto& tree : m.trees) {
    const std::uint32_t n_nodes = r.u32("tree.n_nodes");
    if (n_nodes == 0) throw FormatError("tree.n_nodes", "empty tree");
    if (std::uint64_t{n_nodes} * 28 > r.remaining()) throw FormatError("tree.nodes", "file truncated");
    tree.nodes.resize(n_nodes);
    for (std::uint32_t i = 0; i < n_nodes; ++i) {
      auto& n = tree.nodes[i];
      n.feature = r.i32("node.feature");
      n.threshold = r.f64("node.threshold");
      n.left = r.i32("node.left");
      n.right = r.i32("node.right");
      n.counts[0] = r.u32("node.counts");
      n.counts[1] = r.u32("node.counts");
      if (n.feature >= 0) {
        if (static_cast<std::uint32_t>(n.feature) >= m.feature_count)
          throw FormatError("node.feature", "index out of range");
        const auto child_ok = [&](int c) { return c > static_cast<int>(i) && static_cast<std::uint32_t>(c) < n_nodes; };
        if (!child_ok(n.left) || !child_ok(n.right)) throw FormatError("node.children", "invalid child index");
      } else if (n.feature != -1 || n.left != -1 || n.right != -1) {
        throw FormatError("node.feature", "malformed leaf");
      }
    }
  }
  if (r.position() != body) throw FormatError("trailer", "unexpected bytes before checksum");
  if (crc32(bytes.first(body)) != stored) throw IntegrityError("checksum", "CRC-32 mismatch");
  return m;
}

void write_model(const ForestModel& model, const std::filesystem::path& path) {
  binio::write_file(path, serialize_model(model));
}

ForestModel read_model(const std::filesystem::path& path) { return parse_model(binio::read_file(path)); }

}  // namespace pls
