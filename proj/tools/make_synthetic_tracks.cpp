// Writes a seeded synthetic track CSV for demos and smoke tests.

#include <cstdint>
#include <iostream>
#include <string>

#include "CLI11.hpp"

#include "stormcast/file_io.hpp"
#include "stormcast/synthetic.hpp"

int main(int argc, char** argv) {
  CLI::App app{"Generate synthetic best-track CSV", "make_synthetic_tracks"};
  std::string kind = "recurving", out;
  std::size_t count = 60, length = 20, min_len = 12, max_len = 30;
  std::uint64_t seed = 1;
  app.add_option("--kind", kind)->check(CLI::IsMember({"recurving", "linear"}))->capture_default_str();
  app.add_option("--count", count)->capture_default_str();
  app.add_option("--length", length, "Track length for --kind linear")->capture_default_str();
  app.add_option("--min-len", min_len)->capture_default_str();
  app.add_option("--max-len", max_len)->capture_default_str();
  app.add_option("--seed", seed)->capture_default_str();
  app.add_option("--out", out)->required();
  CLI11_PARSE(app, argc, argv);

  try {
    const auto tracks = kind == "linear" ? stormcast::synthetic::constant_velocity_tracks(count, length, seed)
                                         : stormcast::synthetic::recurving_tracks(count, seed, min_len, max_len);
    stormcast::write_file_atomic(out, stormcast::format_track_csv(tracks));
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return 0;
}
