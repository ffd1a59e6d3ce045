#include "gauss2d/vectors.hpp"

#include <charconv>
#include <cstdio>

#include "gauss2d/errors.hpp"
#include "gauss2d/file_util.hpp"

namespace gauss2d {

VectorSet capture_vectors(const KernelSpec& spec, const GenOptions& opts) {
  spec.validate();
  if (!spec.is_hardware_geometry()) {
    throw ConfigError("vector export is defined for the 256x256 hardware geometry only");
  }
  Gauss2D machine(spec, opts.latencies);
  VectorSet vs;
  vs.records.reserve(machine.frame_ticks());
  machine.start();
  while (!machine.frame_done()) {
    const TickRecord t = machine.step();
    VectorRecord r;
    r.tick = t.tick;
    r.valid = t.valid;
    r.addr1 = static_cast<std::uint8_t>(t.addr1);
    r.addr2 = static_cast<std::uint8_t>(t.addr2);
    r.dout1 = Coord8{static_cast<std::int8_t>(t.dout1)};
    r.dout2 = Coord8{static_cast<std::int8_t>(t.dout2)};
    r.x2 = UProd16{static_cast<std::uint16_t>(t.x2)};
    r.y2 = UProd16{static_cast<std::uint16_t>(t.y2)};
    r.sum = USum17{static_cast<std::uint32_t>(t.sum)};
    for (std::size_t s = 0; s < machine.scale_count(); ++s) {
      r.u[s] = t.u[s];
      r.g[s] = t.g[s];
    }
    vs.records.push_back(r);
  }
  return vs;
}

namespace {

constexpr std::string_view kCsvHeader =
    "tick,valid,addr1,addr2,dout1,dout2,x2,y2,sum,u1,u2,u3,g1,g2,g3";

// Splits on `sep`, collapsing nothing; empty fields are kept.
std::vector<std::string_view> split(std::string_view line, char sep) {
  std::vector<std::string_view> out;
  std::size_t start = 0;
  while (true) {
    const std::size_t p = line.find(sep, start);
    out.push_back(line.substr(start, p == std::string_view::npos ? std::string_view::npos : p - start));
    if (p == std::string_view::npos) break;
    start = p + 1;
  }
  return out;
}

template <typename T>
T parse_num(std::string_view s, int base, std::int64_t lo, std::int64_t hi) {
  std::int64_t v = 0;
  auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v, base);
  if (ec != std::errc{} || ptr != s.data() + s.size()) {
    throw ContractError("malformed vector field '" + std::string(s) + "'");
  }
  if (v < lo || v > hi) throw ContractError("vector field out of range '" + std::string(s) + "'");
  return static_cast<T>(v);
}

template <typename T>
T parse_u(std::string_view s, int base, std::int64_t hi) {
  return parse_num<T>(s, base, 0, hi);
}

template <typename F>
void for_each_line(std::string_view text, F&& fn) {
  std::size_t start = 0;
  while (start < text.size()) {
    std::size_t end = text.find('\n', start);
    if (end == std::string_view::npos) end = text.size();
    std::string_view line = text.substr(start, end - start);
    if (!line.empty() && line.back() == '\r') line.remove_suffix(1);
    if (!line.empty()) fn(line);
    start = end + 1;
  }
}

}  // namespace

std::string to_hex(const VectorSet& vs) {
  std::string out;
  out.reserve(vs.records.size() * 48);
  char line[96];
  for (const VectorRecord& r : vs.records) {
    std::snprintf(line, sizeof line, "%01x %02x %02x %02x %02x %04x %04x %05x %04x %04x %04x %02x %02x %02x\n",
                  unsigned{r.valid}, unsigned{r.addr1}, unsigned{r.addr2}, unsigned{r.dout1.bits()},
                  unsigned{r.dout2.bits()}, unsigned{r.x2.value}, unsigned{r.y2.value}, unsigned{r.sum.value},
                  unsigned{r.u[0].raw}, unsigned{r.u[1].raw}, unsigned{r.u[2].raw}, unsigned{r.g[0].value},
                  unsigned{r.g[1].value}, unsigned{r.g[2].value});
    out += line;
  }
  return out;
}

std::string to_csv(const VectorSet& vs) {
  std::string out(kCsvHeader);
  out += '\n';
  out.reserve(vs.records.size() * 64);
  char line[160];
  for (const VectorRecord& r : vs.records) {
    std::snprintf(line, sizeof line, "%llu,%u,%u,%u,%d,%d,%u,%u,%u,%u,%u,%u,%u,%u,%u\n",
                  static_cast<unsigned long long>(r.tick), unsigned{r.valid}, unsigned{r.addr1},
                  unsigned{r.addr2}, int{r.dout1.value}, int{r.dout2.value}, unsigned{r.x2.value},
                  unsigned{r.y2.value}, unsigned{r.sum.value}, unsigned{r.u[0].raw}, unsigned{r.u[1].raw},
                  unsigned{r.u[2].raw}, unsigned{r.g[0].value}, unsigned{r.g[1].value}, unsigned{r.g[2].value});
    out += line;
  }
  return out;
}

VectorSet parse_hex(std::string_view text) {
  VectorSet vs;
  for_each_line(text, [&](std::string_view line) {
    const auto f = split(line, ' ');
    if (f.size() != 14) throw ContractError("hex vector line needs 14 fields");
    static constexpr std::size_t kWidths[14] = {1, 2, 2, 2, 2, 4, 4, 5, 4, 4, 4, 2, 2, 2};
    for (std::size_t i = 0; i < 14; ++i) {
      if (f[i].size() != kWidths[i]) throw ContractError("hex vector field has wrong width");
    }
    VectorRecord r;
    r.tick = vs.records.size();
    r.valid = parse_u<unsigned>(f[0], 16, 1) != 0;
    r.addr1 = parse_u<std::uint8_t>(f[1], 16, 0xFF);
    r.addr2 = parse_u<std::uint8_t>(f[2], 16, 0xFF);
    r.dout1 = Coord8::from_bits(parse_u<std::uint8_t>(f[3], 16, 0xFF));
    r.dout2 = Coord8::from_bits(parse_u<std::uint8_t>(f[4], 16, 0xFF));
    r.x2 = UProd16{parse_u<std::uint16_t>(f[5], 16, 0xFFFF)};
    r.y2 = UProd16{parse_u<std::uint16_t>(f[6], 16, 0xFFFF)};
    r.sum = USum17{parse_u<std::uint32_t>(f[7], 16, USum17::kMask)};
    for (std::size_t s = 0; s < kMaxScales; ++s) {
      r.u[s] = ExpArg{parse_u<std::uint16_t>(f[8 + s], 16, ExpArg::kMaxRaw)};
      r.g[s] = UQ8{parse_u<std::uint8_t>(f[11 + s], 16, 0xFF)};
    }
    vs.records.push_back(r);
  });
  return vs;
}

VectorSet parse_csv(std::string_view text) {
  VectorSet vs;
  bool header = true;
  for_each_line(text, [&](std::string_view line) {
    if (header) {
      if (line != kCsvHeader) throw ContractError("unexpected vector CSV header");
      header = false;
      return;
    }
    const auto f = split(line, ',');
    if (f.size() != 15) throw ContractError("CSV vector line needs 15 fields");
    VectorRecord r;
    r.tick = parse_u<std::uint64_t>(f[0], 10, std::int64_t{1} << 62);
    if (r.tick != vs.records.size()) throw ContractError("CSV vector ticks are not gap-free");
    r.valid = parse_u<unsigned>(f[1], 10, 1) != 0;
    r.addr1 = parse_u<std::uint8_t>(f[2], 10, 255);
    r.addr2 = parse_u<std::uint8_t>(f[3], 10, 255);
    r.dout1 = Coord8{parse_num<std::int8_t>(f[4], 10, -128, 127)};
    r.dout2 = Coord8{parse_num<std::int8_t>(f[5], 10, -128, 127)};
    r.x2 = UProd16{parse_u<std::uint16_t>(f[6], 10, 0xFFFF)};
    r.y2 = UProd16{parse_u<std::uint16_t>(f[7], 10, 0xFFFF)};
    r.sum = USum17{parse_u<std::uint32_t>(f[8], 10, USum17::kMask)};
    for (std::size_t s = 0; s < kMaxScales; ++s) {
      r.u[s] = ExpArg{parse_u<std::uint16_t>(f[9 + s], 10, ExpArg::kMaxRaw)};
      r.g[s] = UQ8{parse_u<std::uint8_t>(f[12 + s], 10, 255)};
    }
    vs.records.push_back(r);
  });
  if (header) throw ContractError("empty vector CSV");
  return vs;
}

ExportSummary export_vectors(const KernelSpec& spec, const GenOptions& opts,
                             const std::filesystem::path& dir, const std::vector<VectorFormat>& formats) {
  if (formats.empty()) throw ConfigError("no vector format requested");
  const VectorSet vs = capture_vectors(spec, opts);
  if (!std::filesystem::is_directory(dir)) throw IoError("output directory " + dir.string() + " does not exist");

  ExportSummary summary;
  summary.records = vs.records.size();
  for (const VectorFormat f : formats) {
    const std::string name = f == VectorFormat::Hex ? "vectors.hex" : "vectors.csv";
    const std::string body = f == VectorFormat::Hex ? to_hex(vs) : to_csv(vs);
    write_file_atomic(dir / name, body);
    summary.manifest += name + "\t" + sha256_hex(body) + "\n";
    summary.files.push_back(dir / name);
  }
  write_file_atomic(dir / "MANIFEST.tsv", summary.manifest);
  summary.files.push_back(dir / "MANIFEST.tsv");
  return summary;
}

}  // namespace gauss2d
