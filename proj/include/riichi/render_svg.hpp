#pragma once

// SVG table view. Pure function of (state, viewer, locale): the viewer sits
// at the bottom; other seats follow counter-clockwise. Visible tiles carry a
// data-id attribute with their tile id, face-down tiles carry nothing.

#include <sstream>
#include <string>
#include <string_view>

#include "riichi/state.hpp"
#include "riichi/tile.hpp"

namespace riichi {

enum class Locale : std::uint8_t { en, ja };

inline constexpr int kOmniscient = -1;

inline Locale parse_locale(const std::string& s) {
  if (s == "en") return Locale::en;
  if (s == "ja") return Locale::ja;
  throw std::invalid_argument("unknown locale: " + s);
}

namespace svg_detail {

inline constexpr int kSize = 760;
inline constexpr int kCenter = kSize / 2;
inline constexpr int kTileW = 26;
inline constexpr int kTileH = 36;

inline std::string tile_label(TileId t, Locale locale) {
  const int k = t >> 2;
  if (locale == Locale::en) return kind_to_string(static_cast<TileKind>(k));
  static const char* const kDigits[] = {"一", "二", "三", "四", "五", "六", "七", "八", "九"};
  static const char* const kSuits[] = {"萬", "筒", "索"};
  static const char* const kHonors[] = {"東", "南", "西", "北", "白", "發", "中"};
  if (k >= 27) return kHonors[k - 27];
  return std::string(kDigits[k % 9]) + kSuits[k / 9];
}

inline std::string wind_label(TileKind wind, Locale locale) {
  static const char* const kEn[] = {"East", "South", "West", "North"};
  static const char* const kJa[] = {"東", "南", "西", "北"};
  return locale == Locale::en ? kEn[wind - kEast] : kJa[wind - kEast];
}

class Writer {
 public:
  Writer(RuleVariant rule, Locale locale) : rule_(rule), locale_(locale) {}

  void face_up(int x, int y, TileId t, const char* extra_class = "") {
    const bool red = is_red(t, rule_);
    const std::string_view cls = extra_class;
    // Riichi declaration tiles and called tiles get their own face colour;
    // river tiles taken by a call are dimmed.
    const char* fill = cls == "riichi" ? "#f3dc8c" : cls == "called" ? "#cfe3f5" : "#fdfcf5";
    out_ << "<g class=\"tile" << (cls.empty() ? "" : " ") << cls << "\" data-id=\"" << int(t) << "\""
         << (cls == "taken" ? " opacity=\"0.45\"" : "") << ">"
         << "<rect x=\"" << x << "\" y=\"" << y << "\" width=\"" << kTileW << "\" height=\"" << kTileH
         << "\" rx=\"3\" fill=\"" << fill << "\" stroke=\"#333\"/>"
         << "<text x=\"" << x + kTileW / 2 << "\" y=\"" << y + 23 << "\" font-size=\""
         << (locale_ == Locale::en ? 13 : 10) << "\" text-anchor=\"middle\" fill=\"" << (red ? "#c00" : "#111")
         << "\">" << tile_label(t, locale_) << "</text></g>";
  }

  void face_down(int x, int y) {
    out_ << "<rect class=\"tile back\" x=\"" << x << "\" y=\"" << y << "\" width=\"" << kTileW << "\" height=\""
         << kTileH << "\" rx=\"3\" fill=\"#2f6b3a\" stroke=\"#333\"/>";
  }

  void text(int x, int y, const std::string& s, int size = 14, const char* anchor = "middle") {
    out_ << "<text x=\"" << x << "\" y=\"" << y << "\" font-size=\"" << size << "\" text-anchor=\"" << anchor
         << "\" fill=\"#f4f4f4\">" << s << "</text>";
  }

  std::ostringstream& raw() { return out_; }

 private:
  RuleVariant rule_;
  Locale locale_;
  std::ostringstream out_;
};

}  // namespace svg_detail

inline std::string to_svg(const GameState& s, int viewer = kOmniscient, Locale locale = Locale::en) {
  using namespace svg_detail;
  if (viewer < kOmniscient || viewer > 3) throw ContractViolation("viewer out of range");
  const int bottom = viewer == kOmniscient ? 0 : viewer;
  Writer w(s.config.rule, locale);
  auto& out = w.raw();
  out << "<svg xmlns=\"http://www.w3.org/2000/svg\" version=\"1.1\" width=\"" << kSize << "\" height=\"" << kSize
      << "\" viewBox=\"0 0 " << kSize << ' ' << kSize << "\" font-family=\"sans-serif\">";
  out << "<rect width=\"" << kSize << "\" height=\"" << kSize << "\" fill=\"#1d4d2b\"/>";

  for (int rel = 0; rel < 4; ++rel) {
    const int seat = (bottom + rel) % 4;
    const PlayerState& p = s.players[seat];
    const bool visible = viewer == kOmniscient || viewer == seat;
    out << "<g class=\"seat\" data-seat=\"" << seat << "\" transform=\"rotate(" << -90 * rel << ' ' << kCenter << ' '
        << kCenter << ")\">";

    // Concealed hand, drawn tile set apart.
    int x = 90;
    const int hand_y = kSize - 60;
    for (int id = 0; id < kNumTiles; ++id) {
      if (!p.tiles.test(id) || (id == s.drawn_tile && s.current == seat)) continue;
      if (visible) w.face_up(x, hand_y, static_cast<TileId>(id));
      else w.face_down(x, hand_y);
      x += kTileW;
    }
    if (s.drawn_tile != kNoTile && s.current == seat && p.tiles.test(s.drawn_tile)) {
      x += 8;
      if (visible) w.face_up(x, hand_y, s.drawn_tile, "drawn");
      else w.face_down(x, hand_y);
      x += kTileW;
    }

    // Melds from the right edge inwards.
    int mx = kSize - 20;
    for (int i = 0; i < p.meld_count; ++i) {
      const Meld& m = p.melds[i];
      mx -= m.size() * kTileW + 6;
      for (int j = 0; j < m.size(); ++j) {
        const bool down = m.type == MeldType::closed_kan && (j == 0 || j == 3);
        if (down) w.face_down(mx + j * kTileW, hand_y);
        else w.face_up(mx + j * kTileW, hand_y, m.tiles[j], m.tiles[j] == m.called ? "called" : "");
      }
    }

    // River: six per row.
    int n = 0;
    for (int i = 0; i < s.discard_total; ++i) {
      const Discard& d = s.discards[i];
      if (d.seat != seat) continue;
      const int rx = kCenter - 3 * kTileW + (n % 6) * kTileW;
      const int ry = kCenter + 90 + (n / 6) * (kTileH + 2);
      const char* cls = (d.flags & Discard::kRiichiTile) ? "riichi" : (d.flags & Discard::kCalled) ? "taken" : "";
      w.face_up(rx, ry, d.tile, cls);
      ++n;
    }

    // Seat label.
    std::string label = wind_label(s.seat_wind(seat), locale) + " " + std::to_string(s.scores[seat]);
    if (p.riichi != RiichiState::none) label += locale == Locale::en ? " riichi" : " リーチ";
    w.text(kCenter, kCenter + 75, label);
    out << "</g>";
  }

  // Center panel.
  std::string round = wind_label(s.round_wind(), locale);
  if (locale == Locale::en) {
    round += " " + std::to_string(s.kyoku_index % 4 + 1);
  } else {
    round += std::to_string(s.kyoku_index % 4 + 1) + "局";
  }
  w.text(kCenter, kCenter - 40, round, 18);
  w.text(kCenter, kCenter - 20,
         (locale == Locale::en ? "honba " : "本場 ") + std::to_string(s.honba) +
             (locale == Locale::en ? "  deposits " : "  供託 ") + std::to_string(s.deposits),
         12);
  const int dora_x = kCenter - 5 * kTileW / 2;
  for (int i = 0; i < 5; ++i) {
    if (i < s.wall.dora_indicator_count) w.face_up(dora_x + i * kTileW, kCenter - 10, s.wall.dora_indicator(i), "dora");
    else w.face_down(dora_x + i * kTileW, kCenter - 10);
  }
  w.text(kCenter, kCenter + 45, (locale == Locale::en ? "wall " : "残り ") + std::to_string(s.wall.live_remaining()), 12);

  if (s.phase == Phase::kyoku_end || s.phase == Phase::game_end) {
    static const char* const kReasonEn[] = {"",        "tsumo",         "ron",        "exhaustive draw",
                                            "nine terminals", "four riichi", "four kans", "triple ron"};
    static const char* const kReasonJa[] = {"", "ツモ", "ロン", "流局", "九種九牌", "四家立直", "四開槓", "三家和"};
    const int r = static_cast<int>(s.result.reason);
    std::string line = locale == Locale::en ? kReasonEn[r] : kReasonJa[r];
    for (int seat = 0; seat < 4; ++seat) {
      const int d = s.result.deltas[seat];
      line += " " + std::string(d > 0 ? "+" : "") + std::to_string(d);
    }
    w.text(kCenter, 40, line, 16);
  }
  out << "</svg>";
  return out.str();
}

}  // namespace riichi
