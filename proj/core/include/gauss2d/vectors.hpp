#pragma once

// Stimulus/response vectors for cross-checking an HDL simulation of the
// design against the bit model, one record per clock tick.

#include <array>
#include <cstdint>
#include <filesystem>
#include <string>
#include <string_view>
#include <vector>

#include "gauss2d/fxp.hpp"
#include "gauss2d/generator.hpp"

namespace gauss2d {

enum class VectorFormat { Hex, Csv };

struct VectorRecord {
  std::uint64_t tick = 0;
  bool valid = false;
  std::uint8_t addr1 = 0;
  std::uint8_t addr2 = 0;
  Coord8 dout1;
  Coord8 dout2;
  UProd16 x2;
  UProd16 y2;
  USum17 sum;
  std::array<ExpArg, kMaxScales> u{};
  std::array<UQ8, kMaxScales> g{};

  friend bool operator==(const VectorRecord&, const VectorRecord&) = default;
};

struct VectorSet {
  std::vector<VectorRecord> records;  // tick 0 .. total_ticks - 1, gap-free
  friend bool operator==(const VectorSet&, const VectorSet&) = default;
};

/// Runs one frame of the 256x256 design and records every tick. Unused scale
/// slots stay zero. Throws ConfigError for any other geometry.
VectorSet capture_vectors(const KernelSpec& spec, const GenOptions& opts = {});

/// Hex lines: valid addr1 addr2 dout1 dout2 x2 y2 sum u1 u2 u3 g1 g2 g3, each
/// zero-padded to its register width in hex digits (1 2 2 2 2 4 4 5 4 4 4 2 2 2).
/// The line number is the tick.
std::string to_hex(const VectorSet& vs);
std::string to_csv(const VectorSet& vs);

/// Inverse of to_hex / to_csv. Throws ContractError on malformed input.
VectorSet parse_hex(std::string_view text);
VectorSet parse_csv(std::string_view text);

struct ExportSummary {
  std::uint64_t records = 0;
  std::vector<std::filesystem::path> files;  // vector files then the manifest
  std::string manifest;                      // "filename\tsha256" lines
};

/// Writes vectors.hex / vectors.csv for each requested format plus
/// MANIFEST.tsv into dir, each atomically. Throws IoError if dir is unwritable.
ExportSummary export_vectors(const KernelSpec& spec, const GenOptions& opts,
                             const std::filesystem::path& dir, const std::vector<VectorFormat>& formats);

}  // namespace gauss2d
