// Copyright 2026 The jsondst Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.


// The fixed demonstration blocks every built prompt must carry, typed in
// here separately from the template assets.

#ifndef JSONDST_TESTS_COMMON_DEMONSTRATIONS_H_
#define JSONDST_TESTS_COMMON_DEMONSTRATIONS_H_

#include <string_view>
#include <vector>

namespace jsondst::demos {

inline const std::vector<std::string_view> kSystem = {
    R"x(data format of JSON:

```
input message:
system: "...
output JSON:
{"system": {"not_available": {"domain": {"slot": [value]}}, "info": {"domain": {"slot": [value]}}, "ask_for": {"domain": [slot]}}
[END]
```)x",
    R"x(example:

input message:
system: "the booking for restaurant at 10:00 on sunday was successful"
output JSON:
{"system": {"not_available": {}, "info": {"restaurant": {"clock_book": ["10:00"], "week_day": ["sunday"]}, "ask_for": {}}}
[END])x",
    R"x(example:
input message:
system: "it is a chinese restaurant in the centre"
output JSON:
{"system": {"not_available": {}, "info": {"cuisine": ["chinese"], "direction": ["centre"], "ask_for": {}}}
[END])x",
    R"x(example:
input message:
system: "how about abc restaurant in the city centre"
output JSON:
{"system": {"not_available": {}, "info": {"restaurant": {"full_name": ["abc restaurant"], "direction": ["centre"]}, "ask_for": {}}}
[END])x",
    R"x(example:
input message:
system: "how about the part of the area and food type for the restaurant"
output JSON:
{"system": {"not_available": {}, "info": {}, "ask_for": {"restaurant": ["direction", "cuisine"]}}
[END])x",
    R"x(example:
input message:
system: "do you need certain price range or part of area for restaurant"
output JSON:
{"system": {"not_available": {}, "info": {}, "ask_for": {"restaurant": ["price_range", "direction"]}}
[END])x",
    R"x(example:
input message:
system: "sorry i can not book restaurant nusha for you . i can only find nandos"
output JSON:
{"system": {"not_available": {"restaurant": {"full_name": ["nusha"]}, "info": {"restaurant": {"full_name": ["nandos"]}, "ask_for": {}}}
[END])x",
};

inline const std::vector<std::string_view> kUser = {
    R"x(data format of JSON:

input message:
user: "..."
output JSON:
{"user": {"reject": {domain: [slot]}, "request": {domain: {slot: [value]}}}
[END])x",
    R"x(example: input message:
user: "i want a place to eat . in the city centre . with cheap price"
output JSON:
{"user": {"reject": {}, "request": {"restaurant": {"direction": ["centre"], "price_range": ["cheap"]}}}
[END])x",
    R"x(example:
input message:
user: "no particular food type"
output JSON:
{"user": {"reject": {}, "request": {"restaurant": {"cuisine": ["any"]}}}
[END])x",
    R"x(example:
{"system": {"not_avaliabile": {}, "info": {}, "ask_for": {"restaurant": ["price_range", "cuisine"]}}}

input message: user: "no , i am not picky as long as it book for 4 on sunday"
output JSON:
{"user": {"reject": {}, "request": {"restaurant": {"price_range": ["any"], "cuisine": ["any"], "num_people": ["4"], "week_day": ["sunday"]}}}
[END])x",
    R"x(example:
input message:
user: "i want to be in the east of town . can i get their phone number and address please"
output JSON:
{"user": {"reject": {}, "request": {"restaurant": {"direction": ["east"], "phone_number": [], "address": []}}}
[END])x",
    R"x(example:
input message:
user: "nusha is not a restaurant but an attraction"
output JSON:
{"user": {"reject": {"restaurant": ["full_name"]}, "request": {"attraction": {"full_name": ["nusha"]}}}
[END])x",
};

}  // namespace jsondst::demos

#endif  // JSONDST_TESTS_COMMON_DEMONSTRATIONS_H_
