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
//
// Minimal XML DOM for robot-description files: elements, attributes,
// character data, comments, CDATA, and the five predefined entities plus
// numeric character references. No namespaces, no DTD processing. Parse
// errors carry the 1-based line and column of the offending byte.

#ifndef MORPHFORGE_XML_HPP_
#define MORPHFORGE_XML_HPP_

#include <string>
#include <string_view>
#include <vector>

namespace morphforge::xml {

struct Attribute {
  std::string name;
  std::string value;
};

struct Node {
  std::string name;
  std::vector<Attribute> attributes;
  std::vector<Node> children;
  std::string text;  // trimmed character data directly inside this element
  int line = 0;
  int column = 0;

  const std::string* FindAttribute(std::string_view attr_name) const;
  const Node* FindChild(std::string_view child_name) const;
  std::vector<const Node*> FindChildren(std::string_view child_name) const;
};

// Parses a complete document and returns its root element.
// Throws Error(MalformedDocument) with position information.
Node Parse(std::string_view input);

// Pretty-printed document with a standard XML declaration and two-space
// indentation. Inverse of Parse up to insignificant whitespace.
std::string Serialize(const Node& root);

// Serializes a single element subtree at the given indentation depth.
void SerializeNode(const Node& node, int depth, std::string* out);

}  // namespace morphforge::xml

#endif  // MORPHFORGE_XML_HPP_
