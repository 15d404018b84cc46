#include "blehri/ibeacon_codec.hpp"

#include <algorithm>

namespace blehri {

namespace {

constexpr std::array<std::uint8_t, 9> kHeader = {
    0x02, 0x01, 0x06,                    // flags: LE general discoverable, BR/EDR unsupported
    0x1A, 0xFF, 0x4C, 0x00, 0x02, 0x15,  // manufacturer data, company 0x004C, iBeacon type/len
};

constexpr std::size_t kUuidOffset = 9;
constexpr std::size_t kMajorOffset = 25;
constexpr std::size_t kMinorOffset = 27;
constexpr std::size_t kTxPowerOffset = 29;

void write_u16_be(std::uint8_t* dst, std::uint16_t v) {
  dst[0] = static_cast<std::uint8_t>(v >> 8);
  dst[1] = static_cast<std::uint8_t>(v & 0xFF);
}

std::uint16_t read_u16_be(const std::uint8_t* src) {
  return static_cast<std::uint16_t>((src[0] << 8) | src[1]);
}

constexpr std::array<std::string_view, 4> kAttachmentNames = {"Wrist", "Ankle", "Chest", "Other"};

}  // namespace

std::string_view to_string(Attachment a) { return kAttachmentNames[static_cast<int>(a) & 3]; }

bool parse_attachment(std::string_view text, Attachment& out) {
  for (std::size_t i = 0; i < kAttachmentNames.size(); ++i) {
    if (text == kAttachmentNames[i] || (text.size() == 1 && text[0] == static_cast<char>('0' + i))) {
      out = static_cast<Attachment>(i);
      return true;
    }
  }
  return false;
}

BeaconIdentity::BeaconIdentity(int person_id, Attachment attachment)
    : person_(static_cast<std::uint8_t>(person_id)), attachment_(attachment) {
  if (person_id < 0 || person_id >= kMaxPersons) {
    throw std::invalid_argument("person_id out of range [0, 3]: " + std::to_string(person_id));
  }
  if (static_cast<int>(attachment) > 3) {
    throw std::invalid_argument("attachment code out of range [0, 3]");
  }
}

std::string BeaconIdentity::label() const {
  return std::to_string(person_) + "-" + std::string(to_string(attachment_));
}

std::uint8_t pack_identity(BeaconIdentity identity) {
  return static_cast<std::uint8_t>(identity.key());
}

BeaconIdentity unpack_identity(std::uint8_t nibble) {
  return BeaconIdentity((nibble >> 2) & 0x3, static_cast<Attachment>(nibble & 0x3));
}

AdvertisementBytes encode_advertisement(const AdvertisementPayload& payload) {
  if (payload.measured_tx_power_dbm < kMinDbm || payload.measured_tx_power_dbm > kMaxDbm) {
    throw std::invalid_argument("measured_tx_power_dbm out of range [-127, 20]");
  }
  AdvertisementBytes out{};
  std::copy(kHeader.begin(), kHeader.end(), out.begin());
  std::copy(payload.proximity_uuid.begin(), payload.proximity_uuid.end(),
            out.begin() + kUuidOffset);
  write_u16_be(out.data() + kMajorOffset, payload.major);
  write_u16_be(out.data() + kMinorOffset, payload.minor);
  out[kTxPowerOffset] = static_cast<std::uint8_t>(static_cast<std::int8_t>(payload.measured_tx_power_dbm));
  return out;
}

AdvertisementPayload decode_advertisement(std::span<const std::uint8_t> bytes) {
  if (bytes.size() < kAdvertisementSize) {
    throw DecodeError(DecodeError::Kind::TruncatedPayload,
                      "advertisement truncated: " + std::to_string(bytes.size()) + " of 30 bytes");
  }
  if (bytes.size() > kAdvertisementSize) {
    throw DecodeError(DecodeError::Kind::TrailingBytes,
                      "advertisement has " + std::to_string(bytes.size() - kAdvertisementSize) +
                          " trailing bytes");
  }
  for (std::size_t i = 0; i < kHeader.size(); ++i) {
    if (bytes[i] != kHeader[i]) {
      throw DecodeError(DecodeError::Kind::MalformedPrefix,
                        "iBeacon header mismatch at byte " + std::to_string(i));
    }
  }
  AdvertisementPayload p;
  std::copy_n(bytes.begin() + kUuidOffset, p.proximity_uuid.size(), p.proximity_uuid.begin());
  p.major = read_u16_be(bytes.data() + kMajorOffset);
  p.minor = read_u16_be(bytes.data() + kMinorOffset);
  p.measured_tx_power_dbm = static_cast<std::int8_t>(bytes[kTxPowerOffset]);
  if (p.measured_tx_power_dbm < kMinDbm || p.measured_tx_power_dbm > kMaxDbm) {
    throw DecodeError(DecodeError::Kind::TxPowerOutOfRange,
                      "txPower " + std::to_string(p.measured_tx_power_dbm) + " dBm out of range");
  }
  return p;
}

}  // namespace blehri
