// Copyright 2026 The Morphforge Authors
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

#include "morphforge/xml.hpp"

#include <cctype>

#include "morphforge/errors.hpp"

namespace morphforge::xml {

namespace {

bool IsNameStart(char c) {
  return std::isalpha(static_cast<unsigned char>(c)) || c == '_' || c == ':';
}

bool IsNameChar(char c) {
  return IsNameStart(c) || std::isdigit(static_cast<unsigned char>(c)) ||
         c == '-' || c == '.';
}

bool IsSpace(char c) {
  return c == ' ' || c == '\t' || c == '\r' || c == '\n';
}

class Cursor {
 public:
  explicit Cursor(std::string_view input) : input_(input) {}

  bool AtEnd() const { return pos_ >= input_.size(); }
  char Peek() const { return AtEnd() ? '\0' : input_[pos_]; }
  bool StartsWith(std::string_view s) const {
    return input_.substr(pos_, s.size()) == s;
  }

  char Take() {
    const char c = input_[pos_++];
    if (c == '\n') {
      ++line_;
      column_ = 1;
    } else {
      ++column_;
    }
    return c;
  }

  void Skip(size_t n) {
    for (size_t i = 0; i < n && !AtEnd(); ++i) Take();
  }

  void SkipSpace() {
    while (!AtEnd() && IsSpace(Peek())) Take();
  }

  void Expect(char c) {
    if (AtEnd() || Peek() != c) {
      Fail(std::string("expected '") + c + "'");
    }
    Take();
  }

  std::string TakeName() {
    if (AtEnd() || !IsNameStart(Peek())) Fail("expected a name");
    std::string name;
    while (!AtEnd() && IsNameChar(Peek())) name.push_back(Take());
    return name;
  }

  [[noreturn]] void Fail(const std::string& message) const {
    throw Error(ErrorCode::kMalformedDocument,
                "line " + std::to_string(line_) + ", column " +
                    std::to_string(column_) + ": " + message);
  }

  int line() const { return line_; }
  int column() const { return column_; }

 private:
  std::string_view input_;
  size_t pos_ = 0;
  int line_ = 1;
  int column_ = 1;
};

void AppendEntity(Cursor& cur, std::string* out) {
  cur.Take();  // '&'
  std::string entity;
  while (!cur.AtEnd() && cur.Peek() != ';') {
    entity.push_back(cur.Take());
    if (entity.size() > 8) cur.Fail("unterminated entity reference");
  }
  if (cur.AtEnd()) cur.Fail("unterminated entity reference");
  cur.Take();  // ';'
  if (entity == "amp") {
    out->push_back('&');
  } else if (entity == "lt") {
    out->push_back('<');
  } else if (entity == "gt") {
    out->push_back('>');
  } else if (entity == "quot") {
    out->push_back('"');
  } else if (entity == "apos") {
    out->push_back('\'');
  } else if (!entity.empty() && entity[0] == '#') {
    const bool hex = entity.size() > 1 && (entity[1] == 'x' || entity[1] == 'X');
    long code = 0;
    try {
      code = std::stol(entity.substr(hex ? 2 : 1), nullptr, hex ? 16 : 10);
    } catch (const std::exception&) {
      cur.Fail("bad character reference '&" + entity + ";'");
    }
    if (code <= 0 || code > 0x10ffff) {
      cur.Fail("character reference out of range");
    }
    // UTF-8 encode.
    const unsigned long u = static_cast<unsigned long>(code);
    if (u < 0x80) {
      out->push_back(static_cast<char>(u));
    } else if (u < 0x800) {
      out->push_back(static_cast<char>(0xc0 | (u >> 6)));
      out->push_back(static_cast<char>(0x80 | (u & 0x3f)));
    } else if (u < 0x10000) {
      out->push_back(static_cast<char>(0xe0 | (u >> 12)));
      out->push_back(static_cast<char>(0x80 | ((u >> 6) & 0x3f)));
      out->push_back(static_cast<char>(0x80 | (u & 0x3f)));
    } else {
      out->push_back(static_cast<char>(0xf0 | (u >> 18)));
      out->push_back(static_cast<char>(0x80 | ((u >> 12) & 0x3f)));
      out->push_back(static_cast<char>(0x80 | ((u >> 6) & 0x3f)));
      out->push_back(static_cast<char>(0x80 | (u & 0x3f)));
    }
  } else {
    cur.Fail("unknown entity '&" + entity + ";'");
  }
}

std::string TakeQuotedValue(Cursor& cur) {
  const char quote = cur.Peek();
  if (quote != '"' && quote != '\'') cur.Fail("expected a quoted value");
  cur.Take();
  std::string value;
  while (!cur.AtEnd() && cur.Peek() != quote) {
    if (cur.Peek() == '&') {
      AppendEntity(cur, &value);
    } else if (cur.Peek() == '<') {
      cur.Fail("'<' not allowed inside an attribute value");
    } else {
      value.push_back(cur.Take());
    }
  }
  if (cur.AtEnd()) cur.Fail("unterminated attribute value");
  cur.Take();
  return value;
}

void SkipComment(Cursor& cur) {
  cur.Skip(4);  // "<!--"
  while (!cur.AtEnd()) {
    if (cur.StartsWith("-->")) {
      cur.Skip(3);
      return;
    }
    cur.Take();
  }
  cur.Fail("unterminated comment");
}

void SkipMisc(Cursor& cur) {
  for (;;) {
    cur.SkipSpace();
    if (cur.StartsWith("<!--")) {
      SkipComment(cur);
    } else if (cur.StartsWith("<?")) {
      while (!cur.AtEnd() && !cur.StartsWith("?>")) cur.Take();
      if (cur.AtEnd()) cur.Fail("unterminated processing instruction");
      cur.Skip(2);
    } else if (cur.StartsWith("<!DOCTYPE")) {
      while (!cur.AtEnd() && cur.Peek() != '>') cur.Take();
      if (cur.AtEnd()) cur.Fail("unterminated DOCTYPE");
      cur.Take();
    } else {
      return;
    }
  }
}

void TrimInPlace(std::string* s) {
  size_t begin = 0, end = s->size();
  while (begin < end && IsSpace((*s)[begin])) ++begin;
  while (end > begin && IsSpace((*s)[end - 1])) --end;
  *s = s->substr(begin, end - begin);
}

Node ParseElement(Cursor& cur) {
  Node node;
  node.line = cur.line();
  node.column = cur.column();
  cur.Expect('<');
  node.name = cur.TakeName();

  // Attributes.
  for (;;) {
    cur.SkipSpace();
    if (cur.AtEnd()) cur.Fail("unterminated start tag <" + node.name + ">");
    if (cur.Peek() == '>' || cur.StartsWith("/>")) break;
    Attribute attr;
    attr.name = cur.TakeName();
    cur.SkipSpace();
    cur.Expect('=');
    cur.SkipSpace();
    attr.value = TakeQuotedValue(cur);
    for (const Attribute& existing : node.attributes) {
      if (existing.name == attr.name) {
        cur.Fail("duplicate attribute '" + attr.name + "'");
      }
    }
    node.attributes.push_back(std::move(attr));
  }

  if (cur.StartsWith("/>")) {
    cur.Skip(2);
    return node;
  }
  cur.Expect('>');

  // Content: children, text, comments, CDATA, then the end tag.
  std::string text;
  for (;;) {
    if (cur.AtEnd()) cur.Fail("missing end tag </" + node.name + ">");
    if (cur.StartsWith("<!--")) {
      SkipComment(cur);
    } else if (cur.StartsWith("<![CDATA[")) {
      cur.Skip(9);
      while (!cur.AtEnd() && !cur.StartsWith("]]>")) text.push_back(cur.Take());
      if (cur.AtEnd()) cur.Fail("unterminated CDATA section");
      cur.Skip(3);
    } else if (cur.StartsWith("</")) {
      cur.Skip(2);
      const std::string closing = cur.TakeName();
      if (closing != node.name) {
        cur.Fail("mismatched end tag </" + closing + ">, expected </" +
                 node.name + ">");
      }
      cur.SkipSpace();
      cur.Expect('>');
      break;
    } else if (cur.Peek() == '<') {
      node.children.push_back(ParseElement(cur));
    } else if (cur.Peek() == '&') {
      AppendEntity(cur, &text);
    } else {
      text.push_back(cur.Take());
    }
  }
  TrimInPlace(&text);
  node.text = std::move(text);
  return node;
}

void EscapeInto(std::string_view raw, bool attribute, std::string* out) {
  for (const char c : raw) {
    switch (c) {
      case '&': *out += "&amp;"; break;
      case '<': *out += "&lt;"; break;
      case '>': *out += "&gt;"; break;
      case '"':
        if (attribute) {
          *out += "&quot;";
        } else {
          out->push_back(c);
        }
        break;
      default: out->push_back(c);
    }
  }
}

}  // namespace

const std::string* Node::FindAttribute(std::string_view attr_name) const {
  for (const Attribute& attr : attributes) {
    if (attr.name == attr_name) return &attr.value;
  }
  return nullptr;
}

const Node* Node::FindChild(std::string_view child_name) const {
  for (const Node& child : children) {
    if (child.name == child_name) return &child;
  }
  return nullptr;
}

std::vector<const Node*> Node::FindChildren(std::string_view child_name) const {
  std::vector<const Node*> found;
  for (const Node& child : children) {
    if (child.name == child_name) found.push_back(&child);
  }
  return found;
}

Node Parse(std::string_view input) {
  Cursor cur(input);
  SkipMisc(cur);
  if (cur.AtEnd() || cur.Peek() != '<') {
    cur.Fail("expected a root element");
  }
  Node root = ParseElement(cur);
  SkipMisc(cur);
  if (!cur.AtEnd()) cur.Fail("trailing content after the root element");
  return root;
}

void SerializeNode(const Node& node, int depth, std::string* out) {
  out->append(static_cast<size_t>(2 * depth), ' ');
  out->push_back('<');
  *out += node.name;
  for (const Attribute& attr : node.attributes) {
    out->push_back(' ');
    *out += attr.name;
    *out += "=\"";
    EscapeInto(attr.value, /*attribute=*/true, out);
    out->push_back('"');
  }
  if (node.children.empty() && node.text.empty()) {
    *out += "/>\n";
    return;
  }
  if (node.children.empty()) {
    out->push_back('>');
    EscapeInto(node.text, /*attribute=*/false, out);
    *out += "</";
    *out += node.name;
    *out += ">\n";
    return;
  }
  *out += ">\n";
  if (!node.text.empty()) {
    out->append(static_cast<size_t>(2 * (depth + 1)), ' ');
    EscapeInto(node.text, /*attribute=*/false, out);
    out->push_back('\n');
  }
  for (const Node& child : node.children) {
    SerializeNode(child, depth + 1, out);
  }
  out->append(static_cast<size_t>(2 * depth), ' ');
  *out += "</";
  *out += node.name;
  *out += ">\n";
}

std::string Serialize(const Node& root) {
  std::string out = "<?xml version=\"1.0\"?>\n";
  SerializeNode(root, 0, &out);
  return out;
}

}  // namespace morphforge::xml
