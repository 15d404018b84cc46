#pragma once

// iBeacon advertisement codec.
//
// Wire layout (30 bytes, multi-byte fields big-endian):
//
//   [0x02 0x01 0x06]                     flags AD
//   [0x1A 0xFF 0x4C 0x00 0x02 0x15]      manufacturer AD: Apple, iBeacon, len 21
//   uuid[16] major[2] minor[2] txPower[1]
//
// The low nibble of `minor` carries a BeaconIdentity: two bits of person id
// followed by two bits of attachment site.

#include <array>
#include <cstddef>
#include <cstdint>
#include <span>
#include <stdexcept>
#include <string>
#include <string_view>

namespace blehri {

inline constexpr std::size_t kAdvertisementSize = 30;
inline constexpr int kMinDbm = -127;
inline constexpr int kMaxDbm = 20;

enum class Attachment : std::uint8_t { Wrist = 0, Ankle = 1, Chest = 2, Other = 3 };

std::string_view to_string(Attachment a);
bool parse_attachment(std::string_view text, Attachment& out);

class BeaconIdentity {
 public:
  static constexpr int kMaxPersons = 4;

  constexpr BeaconIdentity() = default;
  // Throws std::invalid_argument unless person_id is in [0, 3].
  BeaconIdentity(int person_id, Attachment attachment);

  constexpr int person_id() const { return person_; }
  constexpr Attachment attachment() const { return attachment_; }

  friend constexpr bool operator==(BeaconIdentity, BeaconIdentity) = default;
  friend constexpr auto operator<=>(BeaconIdentity a, BeaconIdentity b) {
    return a.key() <=> b.key();
  }

  // Dense index in [0, 16); equal to pack_identity().
  constexpr int key() const { return (person_ << 2) | static_cast<int>(attachment_); }

  // "<person>-<Attachment>", e.g. "1-Wrist".
  std::string label() const;

 private:
  std::uint8_t person_ = 0;
  Attachment attachment_ = Attachment::Wrist;
};

std::uint8_t pack_identity(BeaconIdentity identity);
BeaconIdentity unpack_identity(std::uint8_t nibble);

struct AdvertisementPayload {
  std::array<std::uint8_t, 16> proximity_uuid{};
  std::uint16_t major = 0;
  std::uint16_t minor = 0;
  int measured_tx_power_dbm = 0;

  BeaconIdentity identity() const { return unpack_identity(minor & 0x0F); }
  void set_identity(BeaconIdentity id) {
    minor = static_cast<std::uint16_t>((minor & 0xFFF0u) | pack_identity(id));
  }

  friend bool operator==(const AdvertisementPayload&, const AdvertisementPayload&) = default;
};

class DecodeError : public std::runtime_error {
 public:
  enum class Kind { TruncatedPayload, TrailingBytes, MalformedPrefix, TxPowerOutOfRange };

  DecodeError(Kind kind, const std::string& what) : std::runtime_error(what), kind_(kind) {}
  Kind kind() const { return kind_; }

 private:
  Kind kind_;
};

using AdvertisementBytes = std::array<std::uint8_t, kAdvertisementSize>;

// Precondition: tx power within [kMinDbm, kMaxDbm]; throws std::invalid_argument otherwise.
AdvertisementBytes encode_advertisement(const AdvertisementPayload& payload);

// Accepts exactly kAdvertisementSize bytes; throws DecodeError otherwise.
AdvertisementPayload decode_advertisement(std::span<const std::uint8_t> bytes);

}  // namespace blehri
