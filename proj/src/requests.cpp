#include "evesim/requests.hpp"

#include <algorithm>
#include <stdexcept>

namespace evesim {

bool SectorProfile::has_member(int habitat_id) const {
  return std::binary_search(members.begin(), members.end(), habitat_id);
}

Request next_request(const SectorProfile& s, int habitat_id,
                     std::uint32_t epoch, const RngDiscipline& rng,
                     int alphabet) {
  if (!s.has_member(habitat_id)) {
    throw std::invalid_argument("next_request: habitat not in sector");
  }
  RngStream stream = rng.stream(StreamKind::habitat,
                                static_cast<std::uint64_t>(habitat_id), epoch,
                                Phase::request);
  Request r;
  r.epoch = epoch;
  r.target = s.archetype;
  for (Symbol& sym : r.target.symbols) {
    if (stream.bernoulli(s.noise_rate)) {
      sym = resample_different(sym, alphabet, stream);
    }
  }
  return r;
}

void drift(SectorProfile& s, std::uint32_t epoch, const RngDiscipline& rng,
           int alphabet) {
  RngStream stream = rng.stream(StreamKind::sector,
                                static_cast<std::uint64_t>(s.id), epoch,
                                Phase::drift);
  for (Symbol& sym : s.archetype.symbols) {
    if (stream.bernoulli(s.drift_rate)) {
      sym = resample_different(sym, alphabet, stream);
    }
  }
}

}  // namespace evesim
