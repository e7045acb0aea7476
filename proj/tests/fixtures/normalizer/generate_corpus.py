# Copyright 2026 The restoracle Authors
#
# Licensed under the Apache License, Version 2.0 (the "License");
# you may not use this file except in compliance with the License.
# You may obtain a copy of the License at
#
#     http://www.apache.org/licenses/LICENSE-2.0
#
# Unless required by applicable law or agreed to in writing, software
# distributed under the License is distributed on an "AS IS" BASIS,
# WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
# See the License for the specific language governing permissions and
# limitations under the License.

"""Writes malformed.json: hand-written malformed completions with the
record each must normalize to."""

import json
import pathlib

HERE = pathlib.Path(__file__).parent
PRICE_ANSWER = (HERE.parent / "yelp" / "price_completion.json").read_text()
PRICE = {"string_specific_values": ["$", "$$", "$$$", "$$$$"]}
PRICE_KEYS = [
    "string_is_url", "string_is_numeric", "string_specific_values",
    "string_is_email", "string_is_date", "string_fixed_length", "string_is_time",
]


def price_obj(keys):
    full = json.loads(PRICE_ANSWER)
    return json.dumps({k: full[k] for k in keys})


FIRST = price_obj(PRICE_KEYS[:4])
SECOND = price_obj(PRICE_KEYS[4:])

Y = ("yelp", "getBusinesses")
C = ("catalog", "listBooks")

CASES = [
    ("price-answer-verbatim", Y, "businesses[*].price", PRICE_ANSWER, PRICE, [], []),
    ("fenced-with-prose", Y, "businesses[*].price",
     "```json\n" + PRICE_ANSWER + "\n```\nThese values come from the description.",
     PRICE, ["stripped-fences", "extracted-json-substring"], []),
    ("leading-prose", Y, "businesses[*].price",
     "Sure! Here is the JSON you asked for:\n" + PRICE_ANSWER, PRICE,
     ["extracted-json-substring"], []),
    ("bare-fence", Y, "businesses[*].price", "```\n" + PRICE_ANSWER + "\n```", PRICE,
     ["stripped-fences"], []),
    ("split-objects", Y, "businesses[*].price", FIRST + "\n" + SECOND, PRICE,
     ["merged-objects"], []),
    ("split-objects-with-prose", Y, "businesses[*].price",
     "Part one:\n" + FIRST + "\nPart two:\n" + SECOND, PRICE,
     ["extracted-json-substring", "merged-objects"], []),
    ("python-literals", Y, "businesses[*].price",
     "{'string_is_url': False, 'string_is_numeric': False, "
     "'string_specific_values': ['$', '$$', '$$$', '$$$$'], 'string_is_email': False, "
     "'string_is_date': False, 'string_fixed_length': None, 'string_is_time': False}",
     PRICE, ["repaired-syntax"], []),
    ("trailing-commas", Y, "businesses[*].price",
     PRICE_ANSWER.replace('"string_is_time": false', '"string_is_time": false,')
     .replace('"$$$$" ]', '"$$$$", ]'), PRICE, ["repaired-syntax"], []),
    ("line-comments", Y, "businesses[*].price",
     PRICE_ANSWER.replace('"string_is_url": false,', '"string_is_url": false, // not a link'),
     PRICE, ["repaired-syntax"], []),
    ("block-comment", Y, "businesses[*].price",
     "/* answers */ " + PRICE_ANSWER, PRICE, ["extracted-json-substring"], []),
    ("bare-keys", Y, "businesses[*].price",
     '{string_is_url: false, string_specific_values: ["$", "$$", "$$$", "$$$$"], '
     'string_is_numeric: false, string_is_email: false, string_is_date: false, '
     'string_fixed_length: null, string_is_time: false}', PRICE, ["repaired-syntax"], []),
    ("string-booleans", Y, "businesses[*].image_url",
     '{"string_is_url": "true", "string_is_numeric": "false", "string_specific_values": [], '
     '"string_is_email": "False", "string_is_date": false, "string_fixed_length": null, '
     '"string_is_time": false}', {"string_is_url": True}, ["coerced-type"], []),
    ("numeric-string-length", Y, "businesses[*].location.country",
     '{"string_is_url": false, "string_is_numeric": false, "string_specific_values": [], '
     '"string_is_email": false, "string_is_date": false, "string_fixed_length": "2", '
     '"string_is_time": false}', {"string_fixed_length": 2}, ["coerced-type"], []),
    ("scalar-to-singleton", Y, "businesses[*].location.country",
     '{"string_is_url": false, "string_is_numeric": false, "string_specific_values": "US", '
     '"string_is_email": false, "string_is_date": false, "string_fixed_length": 2, '
     '"string_is_time": false}',
     {"string_specific_values": ["US"], "string_fixed_length": 2}, ["coerced-type"], []),
    ("numeric-string-bounds", Y, "businesses[*].rating",
     '{"number_min_value": "1", "number_max_value": "5.0", "number_specific_values": []}',
     {"number_min_value": 1, "number_max_value": 5}, ["coerced-type"], []),
    ("missing-keys", Y, "businesses[*].rating", '{"number_min_value": 1}',
     {"number_min_value": 1}, ["defaulted-missing-key"], []),
    ("unknown-keys", Y, "businesses[*].rating",
     '{"number_min_value": 1, "number_max_value": 5, "number_specific_values": [], '
     '"string_is_url": true, "confidence": 0.9}',
     {"number_min_value": 1, "number_max_value": 5}, [], ["string_is_url", "confidence"]),
    ("negative-length", Y, "businesses[*].name",
     '{"string_is_url": false, "string_is_numeric": false, "string_specific_values": [], '
     '"string_is_email": false, "string_is_date": false, "string_fixed_length": -3, '
     '"string_is_time": false}', {}, ["defaulted-missing-key"], []),
    ("free-text-bound", Y, "businesses[*].coordinates.latitude",
     '{"number_min_value": "about minus ninety", "number_max_value": 90, '
     '"number_specific_values": []}', {"number_max_value": 90}, ["defaulted-missing-key"], []),
    ("wrapped-answer", Y, "businesses[*].coordinates.longitude",
     '{"answer": {"number_min_value": -180, "number_max_value": 180, '
     '"number_specific_values": []}}',
     {"number_min_value": -180, "number_max_value": 180}, ["extracted-json-substring"], []),
    ("conflicting-merge", Y, "total",
     '{"number_min_value": 5, "number_max_value": null, "number_specific_values": []}\n'
     '{"number_min_value": 0}', {"number_min_value": 0}, ["merged-objects"], []),
    ("uppercase-keys", Y, "total",
     '{"Number_Min_Value": 0, "number max value": null, "number-specific-values": []}',
     {"number_min_value": 0}, [], []),
    ("array-sizes-strings", Y, "businesses",
     '{"array_min_size": "0", "array_max_size": "50", "array_specific_sizes": ["1", 2]}',
     {"array_min_size": 0, "array_max_size": 50, "array_specific_sizes": [1, 2]},
     ["coerced-type"], []),
    ("duplicate-set-values", C, "books[*].tags",
     '{"array_string_is_url": false, "array_string_is_numeric": false, '
     '"array_string_specific_values": ["new", "new", "used"], "array_string_is_email": false, '
     '"array_string_is_date": false, "array_string_fixed_length": null, '
     '"array_string_is_time": false, "array_min_size": null, "array_max_size": 5, '
     '"array_specific_sizes": []}',
     {"array_string_specific_values": ["new", "used"], "array_max_size": 5}, [], []),
    ("ordering-flags", C, "books[*].edition_years",
     '```json\n{"array_number_min_value": null, "array_number_max_value": null, '
     '"array_number_specific_values": [], "array_min_size": null, "array_max_size": null, '
     '"array_specific_sizes": [], "array_number_asc_order": "true", '
     '"array_number_desc_order": false}\n```',
     {"array_number_asc_order": True}, ["stripped-fences", "coerced-type"], []),
    ("mixed-number-set", C, "books[*].ratings_histogram",
     '{"array_number_min_value": 0, "array_number_max_value": null, '
     '"array_number_specific_values": [1, "2", "three", null], "array_min_size": null, '
     '"array_max_size": null, "array_specific_sizes": [], "array_number_asc_order": false, '
     '"array_number_desc_order": false}',
     {"array_number_min_value": 0, "array_number_specific_values": [1, 2]},
     ["coerced-type"], []),
    ("numeric-flag", C, "books[*].flags",
     '{"array_boolean_always_true": 0, "array_boolean_always_false": 1, '
     '"array_min_size": null, "array_max_size": null, "array_specific_sizes": []}',
     {"array_boolean_always_false": True}, ["coerced-type"], []),
    ("prose-braces-then-json", C, "books[*].isbn",
     'The field looks like {an identifier}. Answer:\n'
     '{"string_is_url": false, "string_is_numeric": true, "string_specific_values": [], '
     '"string_is_email": false, "string_is_date": false, "string_fixed_length": 13, '
     '"string_is_time": false}',
     {"string_is_numeric": True, "string_fixed_length": 13}, ["extracted-json-substring"], []),
    ("no-json-at-all", Y, "businesses[*].name",
     "I cannot determine any constraints for this field.", {}, [], []),
    ("truncated-object", Y, "businesses[*].name",
     '```json\n{"string_is_url": false, "string_is_numeric": fal', {}, [], []),
]


def main():
    out = []
    for name, (api, op), field, text, answers, repairs, rejected in CASES:
        case = {
            "name": name, "api": api, "operation": op, "field": field, "text": text,
            "answers": answers, "repairs": repairs, "rejectedKeys": rejected,
        }
        if name in ("no-json-at-all", "truncated-object"):
            case["unrecoverable"] = True
        out.append(case)
    assert len(out) == 30, len(out)
    (HERE / "malformed.json").write_text(json.dumps(out, indent=2) + "\n")


if __name__ == "__main__":
    main()
