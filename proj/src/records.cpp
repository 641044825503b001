#include <array>
#include <charconv>
#include <string>

#include "halving/error.hpp"
#include "halving/experiments.hpp"
#include "halving/format.hpp"

namespace halving {

namespace {

constexpr std::array<std::string_view, 11> kColumns = {
    "instance_id", "n", "alpha", "mu_min", "mu_max", "b", "B",
    "algo",        "seed", "selected_arm", "regret"};

template <typename T>
T parse_field(std::string_view field, std::size_t line_no) {
  T value{};
  const auto [ptr, ec] = std::from_chars(field.data(), field.data() + field.size(), value);
  if (field.empty() || ec != std::errc() || ptr != field.data() + field.size()) {
    throw Error(ErrorKind::ParseError,
                "line " + std::to_string(line_no) + ": bad field '" + std::string(field) + "'");
  }
  return value;
}

std::vector<std::string_view> split(std::string_view line) {
  std::vector<std::string_view> fields;
  for (;;) {
    const auto comma = line.find(',');
    fields.push_back(line.substr(0, comma));
    if (comma == std::string_view::npos) break;
    line.remove_prefix(comma + 1);
  }
  return fields;
}

}  // namespace

void write_sweep_csv(std::ostream& out, std::span<const SweepRecord> records,
                     std::span<const std::string> comments) {
  for (const std::string& c : comments) out << "# " << c << '\n';
  for (std::size_t i = 0; i < kColumns.size(); ++i) out << (i ? "," : "") << kColumns[i];
  out << '\n';
  for (const SweepRecord& r : records) {
    out << r.instance_id << ',' << r.n << ',' << format_double(r.alpha) << ','
        << format_double(r.mu_min) << ',' << format_double(r.mu_max) << ',' << r.b << ','
        << r.B << ',' << to_string(r.algo) << ',' << r.seed << ',' << r.selected_arm << ','
        << format_double(r.regret) << '\n';
  }
}

std::vector<SweepRecord> read_sweep_csv(std::istream& in) {
  std::vector<SweepRecord> records;
  std::string line;
  std::size_t line_no = 0;
  bool header_seen = false;
  while (std::getline(in, line)) {
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty() || line.front() == '#') continue;
    const auto fields = split(line);
    if (!header_seen) {
      if (fields.size() != kColumns.size() ||
          !std::equal(fields.begin(), fields.end(), kColumns.begin())) {
        throw Error(ErrorKind::ParseError, "line " + std::to_string(line_no) +
                                               ": expected header " + std::string(kColumns[0]) +
                                               ",...," + std::string(kColumns.back()));
      }
      header_seen = true;
      continue;
    }
    if (fields.size() != kColumns.size()) {
      throw Error(ErrorKind::ParseError, "line " + std::to_string(line_no) + ": expected " +
                                             std::to_string(kColumns.size()) + " fields");
    }
    SweepRecord r;
    r.instance_id = parse_field<std::size_t>(fields[0], line_no);
    r.n = parse_field<std::size_t>(fields[1], line_no);
    r.alpha = parse_field<double>(fields[2], line_no);
    r.mu_min = parse_field<double>(fields[3], line_no);
    r.mu_max = parse_field<double>(fields[4], line_no);
    r.b = parse_field<std::size_t>(fields[5], line_no);
    r.B = parse_field<std::size_t>(fields[6], line_no);
    r.algo = parse_algorithm(fields[7]);
    r.seed = parse_field<std::size_t>(fields[8], line_no);
    r.selected_arm = parse_field<std::size_t>(fields[9], line_no);
    r.regret = parse_field<double>(fields[10], line_no);
    records.push_back(r);
  }
  if (!header_seen) throw Error(ErrorKind::ParseError, "no header row");
  return records;
}

}  // namespace halving
