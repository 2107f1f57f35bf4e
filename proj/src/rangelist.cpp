/*
 * Licensed under the Apache License, Version 2.0 (the "License");
 * you may not use this file except in compliance with the License.
 * You may obtain a copy of the License at
 *
 *     http://www.apache.org/licenses/LICENSE-2.0
 *
 * Unless required by applicable law or agreed to in writing, software
 * distributed under the License is distributed on an "AS IS" BASIS,
 * WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 * See the License for the specific language governing permissions and
 * limitations under the License.
 */
#include "lulc/rangelist.hpp"

#include <cctype>
#include <cstdio>

#include "lulc/errors.hpp"
#include "text_util.hpp"

namespace lulc {

namespace {

// ---- minimal XML subset --------------------------------------------------
//
// Enough XML for RangeList documents: declaration and processing
// instructions (skipped), comments, elements with attributes (attributes
// are skipped), self-closing tags, character data with the five named
// entities and numeric references. No CDATA, no DOCTYPE, no namespaces.

struct XmlNode {
    std::string name;
    std::string text;  // concatenated character data
    std::vector<XmlNode> children;
};

class XmlParser {
public:
    explicit XmlParser(std::string_view text) : text_(text) {}

    XmlNode parse_document() {
        if (text_.substr(0, 3) == "\xEF\xBB\xBF") pos_ = 3;
        skip_misc();
        if (!at('<')) throw err("expected a root element");
        XmlNode root = parse_element();
        skip_misc();
        if (pos_ != text_.size()) throw err("content after the root element");
        return root;
    }

private:
    XmlError err(const std::string& what) const {
        return XmlError(what + " (at byte " + std::to_string(pos_) + ")");
    }

    bool at(char c) const { return pos_ < text_.size() && text_[pos_] == c; }
    bool starts(std::string_view s) const {
        return text_.substr(pos_, s.size()) == s;
    }

    void skip_whitespace() {
        while (pos_ < text_.size() &&
               std::isspace(static_cast<unsigned char>(text_[pos_])))
            ++pos_;
    }

    /// Whitespace, comments, and <? ... ?> instructions between elements.
    void skip_misc() {
        while (true) {
            skip_whitespace();
            if (starts("<!--")) {
                auto end = text_.find("-->", pos_ + 4);
                if (end == std::string_view::npos)
                    throw err("unterminated comment");
                pos_ = end + 3;
            } else if (starts("<?")) {
                auto end = text_.find("?>", pos_ + 2);
                if (end == std::string_view::npos)
                    throw err("unterminated processing instruction");
                pos_ = end + 2;
            } else if (starts("<!")) {
                throw err("DOCTYPE/CDATA markup is not supported");
            } else {
                return;
            }
        }
    }

    static bool name_start(char c) {
        return std::isalpha(static_cast<unsigned char>(c)) || c == '_' || c == ':';
    }
    static bool name_char(char c) {
        return name_start(c) || std::isdigit(static_cast<unsigned char>(c)) ||
               c == '-' || c == '.';
    }

    std::string parse_name() {
        if (pos_ >= text_.size() || !name_start(text_[pos_]))
            throw err("expected an XML name");
        std::size_t begin = pos_;
        while (pos_ < text_.size() && name_char(text_[pos_])) ++pos_;
        return std::string(text_.substr(begin, pos_ - begin));
    }

    /// Consumes attributes up to '>' or '/>'; returns true when
    /// self-closing. Attribute values may contain '>' so quotes are honored.
    bool skip_attributes() {
        while (true) {
            skip_whitespace();
            if (pos_ >= text_.size()) throw err("unterminated start tag");
            char c = text_[pos_];
            if (c == '>') {
                ++pos_;
                return false;
            }
            if (c == '/') {
                ++pos_;
                if (!at('>')) throw err("expected '>' after '/'");
                ++pos_;
                return true;
            }
            parse_name();
            skip_whitespace();
            if (!at('=')) throw err("attribute without '='");
            ++pos_;
            skip_whitespace();
            if (!at('"') && !at('\'')) throw err("unquoted attribute value");
            char quote = text_[pos_++];
            auto end = text_.find(quote, pos_);
            if (end == std::string_view::npos)
                throw err("unterminated attribute value");
            pos_ = end + 1;
        }
    }

    void append_utf8(std::string& out, unsigned long cp) {
        if (cp <= 0x7F) {
            out += static_cast<char>(cp);
        } else if (cp <= 0x7FF) {
            out += static_cast<char>(0xC0 | (cp >> 6));
            out += static_cast<char>(0x80 | (cp & 0x3F));
        } else if (cp <= 0xFFFF) {
            out += static_cast<char>(0xE0 | (cp >> 12));
            out += static_cast<char>(0x80 | ((cp >> 6) & 0x3F));
            out += static_cast<char>(0x80 | (cp & 0x3F));
        } else if (cp <= 0x10FFFF) {
            out += static_cast<char>(0xF0 | (cp >> 18));
            out += static_cast<char>(0x80 | ((cp >> 12) & 0x3F));
            out += static_cast<char>(0x80 | ((cp >> 6) & 0x3F));
            out += static_cast<char>(0x80 | (cp & 0x3F));
        } else {
            throw err("character reference out of range");
        }
    }

    void parse_entity(std::string& out) {
        auto end = text_.find(';', pos_);
        if (end == std::string_view::npos || end - pos_ > 12)
            throw err("'&' without a terminated entity");
        std::string_view body = text_.substr(pos_ + 1, end - pos_ - 1);
        if (body == "amp") out += '&';
        else if (body == "lt") out += '<';
        else if (body == "gt") out += '>';
        else if (body == "quot") out += '"';
        else if (body == "apos") out += '\'';
        else if (body.size() > 1 && body[0] == '#') {
            int base = 10;
            std::string_view digits = body.substr(1);
            if (!digits.empty() && (digits[0] == 'x' || digits[0] == 'X')) {
                base = 16;
                digits = digits.substr(1);
            }
            if (digits.empty()) throw err("empty character reference");
            unsigned long cp = 0;
            for (char c : digits) {
                int d;
                if (c >= '0' && c <= '9') d = c - '0';
                else if (base == 16 && c >= 'a' && c <= 'f') d = c - 'a' + 10;
                else if (base == 16 && c >= 'A' && c <= 'F') d = c - 'A' + 10;
                else throw err("malformed character reference");
                cp = cp * base + static_cast<unsigned long>(d);
                if (cp > 0x10FFFF) throw err("character reference out of range");
            }
            append_utf8(out, cp);
        } else {
            throw err("unknown entity &" + std::string(body) + ";");
        }
        pos_ = end + 1;
    }

    XmlNode parse_element() {
        ++pos_;  // '<'
        XmlNode node;
        node.name = parse_name();
        if (skip_attributes()) return node;  // self-closing

        while (true) {
            if (pos_ >= text_.size())
                throw err("unterminated element <" + node.name + ">");
            char c = text_[pos_];
            if (c == '<') {
                if (starts("</")) {
                    pos_ += 2;
                    std::string close = parse_name();
                    if (close != node.name)
                        throw err("mismatched closing tag </" + close +
                                  "> for <" + node.name + ">");
                    skip_whitespace();
                    if (!at('>')) throw err("malformed closing tag");
                    ++pos_;
                    return node;
                }
                if (starts("<!--")) {
                    auto end = text_.find("-->", pos_ + 4);
                    if (end == std::string_view::npos)
                        throw err("unterminated comment");
                    pos_ = end + 3;
                } else if (starts("<?")) {
                    auto end = text_.find("?>", pos_ + 2);
                    if (end == std::string_view::npos)
                        throw err("unterminated processing instruction");
                    pos_ = end + 2;
                } else if (starts("<!")) {
                    throw err("DOCTYPE/CDATA markup is not supported");
                } else {
                    node.children.push_back(parse_element());
                }
            } else if (c == '&') {
                parse_entity(node.text);
            } else {
                node.text += c;
                ++pos_;
            }
        }
    }

    std::string_view text_;
    std::size_t pos_ = 0;
};

// ---- RangeList schema ----------------------------------------------------

Rgb parse_color(const std::string& text, std::size_t range_index) {
    auto hex = detail::trim(text);
    if (hex.size() != 6)
        throw SchemaError("Range " + std::to_string(range_index) +
                          ": Color must be exactly 6 hex digits, got \"" +
                          hex + "\"");
    std::uint32_t value = 0;
    for (char c : hex) {
        int d;
        if (c >= '0' && c <= '9') d = c - '0';
        else if (c >= 'a' && c <= 'f') d = c - 'a' + 10;
        else if (c >= 'A' && c <= 'F') d = c - 'A' + 10;
        else
            throw SchemaError("Range " + std::to_string(range_index) +
                              ": Color has a non-hex digit");
        value = (value << 4) | static_cast<std::uint32_t>(d);
    }
    return {static_cast<std::uint8_t>(value >> 16),
            static_cast<std::uint8_t>(value >> 8),
            static_cast<std::uint8_t>(value)};
}

ColorBand parse_range(const XmlNode& range, std::size_t range_index) {
    auto fail = [&](const std::string& what) -> SchemaError {
        return SchemaError("Range " + std::to_string(range_index) + ": " + what);
    };

    const XmlNode* name = nullptr;
    const XmlNode* comment = nullptr;
    const XmlNode* color = nullptr;
    const XmlNode* tolerance = nullptr;
    for (const auto& child : range.children) {
        const XmlNode** slot;
        if (child.name == "Name") slot = &name;
        else if (child.name == "Comment") slot = &comment;
        else if (child.name == "Color") slot = &color;
        else if (child.name == "Tolerance") slot = &tolerance;
        else throw fail("unexpected element <" + child.name + ">");
        if (*slot) throw fail("duplicate element <" + child.name + ">");
        *slot = &child;
    }
    if (!name) throw fail("missing <Name>");
    if (!color) throw fail("missing <Color>");
    if (!tolerance) throw fail("missing <Tolerance>");

    ColorBand band;
    band.name = detail::trim(name->text);
    if (band.name.empty()) throw fail("empty <Name>");
    if (comment) band.comment = detail::trim(comment->text);
    band.color = parse_color(color->text, range_index);
    auto tol = detail::parse_long(tolerance->text);
    if (!tol || *tol < 0 || *tol > 255)
        throw fail("Tolerance must be an integer 0-255, got \"" +
                   detail::trim(tolerance->text) + "\"");
    band.tolerance = static_cast<int>(*tol);
    band.class_label = derive_class_label(band.name);
    return band;
}

void escape_text(std::string& out, const std::string& text) {
    for (char c : text) {
        if (c == '&') out += "&amp;";
        else if (c == '<') out += "&lt;";
        else if (c == '>') out += "&gt;";
        else out += c;
    }
}

}  // namespace

BandSet parse_rangelist_xml(const std::string& text) {
    XmlNode root = XmlParser(text).parse_document();
    if (root.name != "RangeList")
        throw SchemaError("root element must be <RangeList>, got <" +
                          root.name + ">");

    BandSet set;
    for (std::size_t i = 0; i < root.children.size(); ++i) {
        const auto& child = root.children[i];
        if (child.name != "Range")
            throw SchemaError("unexpected element <" + child.name +
                              "> under <RangeList>");
        set.bands.push_back(parse_range(child, i));
    }
    set.hierarchy = default_hierarchy();
    return set;
}

std::string serialize_rangelist_xml(const BandSet& bands) {
    std::string out = "<RangeList>\n";
    for (const auto& band : bands.bands) {
        out += "  <Range>\n";
        out += "    <Name>";
        escape_text(out, band.name);
        out += "</Name>\n";
        if (band.comment) {
            out += "    <Comment>";
            escape_text(out, *band.comment);
            out += "</Comment>\n";
        }
        char color[8];
        std::snprintf(color, sizeof color, "%02x%02x%02x", band.color.r,
                      band.color.g, band.color.b);
        out += "    <Color>";
        out += color;
        out += "</Color>\n";
        out += "    <Tolerance>" + std::to_string(band.tolerance) +
               "</Tolerance>\n";
        out += "  </Range>\n";
    }
    out += "</RangeList>\n";
    return out;
}

}  // namespace lulc
