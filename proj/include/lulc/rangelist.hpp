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
#pragma once

#include <string>

#include "lulc/bands.hpp"

namespace lulc {

/// Parses a RangeList XML document:
///
///   <RangeList>
///     <Range>
///       <Name>Band 1 - Wheat</Name>
///       <Comment>optional free text</Comment>
///       <Color>606f55</Color>
///       <Tolerance>10</Tolerance>
///     </Range>
///     ...
///   </RangeList>
///
/// Name, Color (exactly 6 hex digits), and Tolerance (decimal 0-255) are
/// required; Comment is optional. Band order follows document order. Class
/// labels are derived from names via derive_class_label, and the built-in
/// default hierarchy is attached (callers supplying a hierarchy file
/// overwrite it afterwards).
///
/// Throws XmlError (not well-formed), SchemaError (wrong elements, missing
/// or malformed fields).
BandSet parse_rangelist_xml(const std::string& text);

/// Emits a RangeList document that parse_rangelist_xml maps back to an
/// equal BandSet (for sets carrying the default hierarchy). Element order
/// is Name, Comment (when present), Color, Tolerance; colors lower-case.
std::string serialize_rangelist_xml(const BandSet& bands);

}  // namespace lulc
