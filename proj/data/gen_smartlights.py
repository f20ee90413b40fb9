#!/usr/bin/env python3
# Copyright 2026 The SLU Engine Authors.
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

"""Generates the SmartLights-style lighting dataset (smartlights.json).

Six intents over rooms, colors and spelled-out brightness levels. Output is
deterministic for a given --seed.
"""

import argparse
import json
import os
import random

ROOMS = [
    "kitchen", "bedroom", "bathroom", "living room", "dining room", "hallway", "garage",
    "basement", "attic", "office", "study", "library", "nursery", "playroom", "laundry room",
    "guest room", "guest bedroom", "master bedroom", "master bathroom", "kids room",
    "family room", "sitting room", "front porch", "back porch", "patio", "garden", "balcony",
    "terrace", "entrance", "entryway", "foyer", "corridor", "staircase", "stairs", "landing",
    "pantry", "cellar", "wine cellar", "workshop", "gym", "home gym", "sauna", "studio",
    "music room", "game room", "media room", "cinema room", "den", "loft", "lounge",
    "utility room", "mudroom", "closet", "walk-in closet", "dressing room", "powder room",
    "shower room", "toilet", "greenhouse", "conservatory", "sunroom", "driveway", "shed",
    "barn", "pool house", "reading nook", "upstairs bathroom", "downstairs toilet",
    "second bedroom", "third bedroom", "baby room", "teenager room", "breakfast room",
    "guest house", "granny flat", "boiler room", "storage room", "server room", "craft room",
    "sewing room", "art studio", "piano room", "trophy room", "billiard room", "bar",
    "wine bar", "tea room", "smoking room", "meditation room", "yoga room", "prayer room",
    "spare room", "box room", "front yard", "back yard", "courtyard", "veranda", "gazebo",
    "carport", "boat house", "tree house", "kennel", "stable", "orangery", "chapel",
    "cloakroom", "scullery", "larder", "vestibule", "gallery", "mezzanine", "penthouse",
    "annex", "lobby", "reception", "waiting room", "nursery corner", "bunk room", "dorm",
    "sleeping porch", "rooftop", "roof terrace", "front hall", "back hall", "side entrance",
]

COLORS = [
    "red", "green", "blue", "yellow", "orange", "purple", "pink", "white", "warm white",
    "cool white", "daylight", "cyan", "magenta", "violet", "indigo", "turquoise", "teal",
    "lime", "olive", "navy", "maroon", "crimson", "scarlet", "amber", "gold", "golden",
    "silver", "beige", "ivory", "lavender", "lilac", "mauve", "peach", "coral", "salmon",
    "rose", "fuchsia", "aqua", "azure", "sky blue", "royal blue", "dark blue", "pale blue",
    "dark green", "pale green", "forest green", "mint", "emerald", "jade", "khaki", "tan",
    "brown", "chocolate", "copper", "bronze", "plum", "burgundy", "cherry", "ruby",
    "sapphire", "lemon", "mustard", "sunset orange", "candlelight", "soft pink", "hot pink",
    "electric blue", "deep purple", "pale yellow", "champagne",
    "cream", "vanilla", "honey", "caramel", "cinnamon", "rust", "brick", "terracotta",
    "sand", "pearl", "frost", "charcoal", "slate", "steel blue", "midnight blue", "cobalt",
    "cerulean", "periwinkle", "orchid", "heather", "raspberry", "strawberry", "watermelon",
    "tangerine", "apricot", "mango", "banana yellow", "canary", "chartreuse", "pistachio",
    "sage", "moss", "seafoam", "ocean blue", "ice blue", "arctic white", "moonlight",
    "sunrise", "twilight", "neon green", "neon pink", "blush", "wine red", "blood red",
]

UNITS = ["one", "two", "three", "four", "five", "six", "seven", "eight", "nine"]
TEENS = ["ten", "eleven", "twelve", "thirteen", "fourteen", "fifteen", "sixteen",
         "seventeen", "eighteen", "nineteen"]
TENS = ["twenty", "thirty", "forty", "fifty", "sixty", "seventy", "eighty", "ninety"]


def number_words(n):
    if n == 0:
        return "zero"
    if n == 100:
        return "one hundred"
    if n < 10:
        return UNITS[n - 1]
    if n < 20:
        return TEENS[n - 10]
    t, u = divmod(n, 10)
    return TENS[t - 2] + ("" if u == 0 else " " + UNITS[u - 1])


def brightness_grammar():
    """AT&T acceptor for the numbers zero to one hundred."""
    lines = []
    final, hundred, tens = 1, 2, 3
    lines.append(f"0 {final} zero zero")
    lines.append(f"0 {hundred} one one")
    lines.append(f"{hundred} {final} hundred hundred")
    for w in UNITS[1:] + TEENS:
        lines.append(f"0 {final} {w} {w}")
    for i, w in enumerate(TENS):
        s = tens + i
        lines.append(f"0 {s} {w} {w}")
        for u in UNITS:
            lines.append(f"{s} {final} {u} {u}")
    finals = [final, hundred] + [tens + i for i in range(len(TENS))]
    lines += [str(f) for f in finals]
    return "\n".join(lines) + "\n"


POLITE = ["", "please ", "can you ", "could you ", "would you ", "can you please ",
          "could you please ", "i want you to ", "i would like you to ", "hey ", "okay ",
          "go ahead and ", "just ", "hey assistant ", "alright ", "now ", "quickly ",
          "would you mind to ", "kindly ", "do me a favor and ", "i need you to ",
          "will you ", "listen ", "excuse me "]
TAIL = ["", "", "", " please", " now", " right now", " for me", " thanks", " thank you",
        " immediately", " quickly", " tonight", " this evening", " again", " as well",
        " when you can", " if possible", " at once"]
LIGHT = ["the lights", "the light", "the lamps", "the lamp", "the lighting", "the bulbs",
         "the ceiling lights", "the ceiling light", "all the lights", "every light",
         "the chandelier", "the spotlights", "the downlights", "the wall lights",
         "the floor lamp", "the table lamp", "the strip lights", "the led strip",
         "the pendant lights", "the night light", "the reading lamp", "the fairy lights"]
IN = ["in the", "in my", "of the", "for the", "inside the", "in our", "over in the",
      "down in the", "up in the", "out in the"]


def room(rng):
    return f"({rng.choice(ROOMS)})[room]"


def light_in_room(rng):
    if rng.random() < 0.25:
        return f"the {room(rng)} lights" if rng.random() < 0.5 else f"the {room(rng)} light"
    return f"{rng.choice(LIGHT)} {rng.choice(IN)} {room(rng)}"


def level(rng):
    return f"({number_words(rng.randint(0, 100))})[brightness]"


def color(rng):
    return f"({rng.choice(COLORS)})[color]"


def switch_on(rng):
    verb = rng.choice(["turn on", "switch on", "put on", "power on", "activate", "light up",
                       "enable"])
    form = rng.random()
    if form < 0.45:
        body = f"{verb} {light_in_room(rng)}"
    elif form < 0.7:
        body = f"{verb.split()[0]} {light_in_room(rng)} on" if " on" in verb else f"{verb} {light_in_room(rng)}"
    elif form < 0.85:
        body = rng.choice(["i need light in the", "give me some light in the",
                           "it is too dark in the", "lights on in the"]) + f" {room(rng)}"
    else:
        body = f"{verb} {rng.choice(LIGHT)}"
    return rng.choice(POLITE) + body + rng.choice(TAIL)


def switch_off(rng):
    verb = rng.choice(["turn off", "switch off", "shut off", "power off", "deactivate",
                       "kill", "disable", "cut"])
    form = rng.random()
    if form < 0.45:
        body = f"{verb} {light_in_room(rng)}"
    elif form < 0.7:
        body = f"{verb.split()[0]} {light_in_room(rng)} off" if " off" in verb else f"{verb} {light_in_room(rng)}"
    elif form < 0.85:
        body = rng.choice(["no more light in the", "make it dark in the",
                           "i do not need light in the", "lights out in the"]) + f" {room(rng)}"
    else:
        body = f"{verb} {rng.choice(LIGHT)}"
    return rng.choice(POLITE) + body + rng.choice(TAIL)


def set_brightness(rng):
    unit = rng.choice(["", " percent", " percent", " out of one hundred"])
    form = rng.random()
    if form < 0.35:
        body = f"set {light_in_room(rng)} to {level(rng)}{unit}"
    elif form < 0.6:
        body = f"{rng.choice(['set', 'change', 'adjust', 'put'])} the brightness {rng.choice(IN)} {room(rng)} to {level(rng)}{unit}"
    elif form < 0.8:
        body = f"{rng.choice(['dim', 'set'])} {light_in_room(rng)} at {level(rng)}{unit}"
    else:
        body = f"brightness {level(rng)}{unit} {rng.choice(IN)} {room(rng)}"
    if rng.random() < 0.15:
        body = f"set the brightness to {level(rng)}{unit}"
    return rng.choice(POLITE) + body + rng.choice(TAIL)


def set_color(rng):
    form = rng.random()
    if form < 0.35:
        body = f"{rng.choice(['change', 'set', 'turn', 'switch'])} {light_in_room(rng)} to {color(rng)}"
    elif form < 0.6:
        body = f"make {light_in_room(rng)} {color(rng)}"
    elif form < 0.8:
        body = f"{rng.choice(['i want', 'i would like', 'give me'])} {color(rng)} {rng.choice(['light', 'lights', 'lighting'])} {rng.choice(IN)} {room(rng)}"
    else:
        body = f"{rng.choice(['change', 'set'])} the color {rng.choice(IN)} {room(rng)} to {color(rng)}"
    if rng.random() < 0.1:
        body = f"change the color to {color(rng)}"
    return rng.choice(POLITE) + body + rng.choice(TAIL)


def increase(rng):
    form = rng.random()
    if form < 0.4:
        body = f"{rng.choice(['increase', 'raise', 'boost', 'turn up', 'bump up', 'crank up'])} the brightness {rng.choice(IN)} {room(rng)}"
    elif form < 0.7:
        body = f"{rng.choice(['brighten', 'make brighter', 'turn up'])} {light_in_room(rng)}"
    elif form < 0.85:
        body = rng.choice(["it is too dim in the", "more light in the", "i need more light in the",
                           "not bright enough in the"]) + f" {room(rng)}"
    else:
        body = rng.choice(["make it brighter", "brighter", "more light", "increase the brightness",
                           "turn up the lights", "a bit brighter"])
    return rng.choice(POLITE) + body + rng.choice(TAIL)


def decrease(rng):
    form = rng.random()
    if form < 0.4:
        body = f"{rng.choice(['decrease', 'lower', 'reduce', 'turn down', 'tone down', 'bring down'])} the brightness {rng.choice(IN)} {room(rng)}"
    elif form < 0.7:
        body = f"{rng.choice(['dim', 'darken', 'turn down'])} {light_in_room(rng)}"
    elif form < 0.85:
        body = rng.choice(["it is too bright in the", "less light in the",
                           "the light is too strong in the", "too much light in the"]) + f" {room(rng)}"
    else:
        body = rng.choice(["make it darker", "darker", "less light", "decrease the brightness",
                           "turn down the lights", "a bit dimmer"])
    return rng.choice(POLITE) + body + rng.choice(TAIL)


INTENTS = {
    "SwitchLightOn": switch_on,
    "SwitchLightOff": switch_off,
    "SetLightBrightness": set_brightness,
    "SetLightColor": set_color,
    "IncreaseBrightness": increase,
    "DecreaseBrightness": decrease,
}


def main():
    parser = argparse.ArgumentParser(description=__doc__)
    parser.add_argument("--seed", type=int, default=2018)
    parser.add_argument("--per-intent", type=int, default=220)
    parser.add_argument("--out", default=os.path.join(os.path.dirname(__file__), "smartlights.json"))
    args = parser.parse_args()
    rng = random.Random(args.seed)
    intents = {}
    for name, make in INTENTS.items():
        seen, utterances = set(), []
        while len(utterances) < args.per_intent:
            u = " ".join(make(rng).split())
            if u not in seen:
                seen.add(u)
                utterances.append(u)
        intents[name] = {"utterances": utterances}
    doc = {
        "language": "en",
        "intents": intents,
        "slots": {
            "room": {"kind": "gazetteer", "values": ROOMS},
            "color": {"kind": "gazetteer", "values": COLORS},
            "brightness": {"kind": "grammar", "grammar_file": "brightness.att"},
        },
    }
    with open(args.out, "w") as f:
        json.dump(doc, f, indent=1)
        f.write("\n")
    with open(os.path.join(os.path.dirname(args.out), "brightness.att"), "w") as f:
        f.write(brightness_grammar())


if __name__ == "__main__":
    main()
