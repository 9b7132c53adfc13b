#!/usr/bin/env python3
# Copyright 2026 The enakit Authors
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
"""Regenerates the synthetic demo dataset in this directory.

Output is deterministic; rerunning rewrites identical files.
"""

import csv
import math
import random
import struct
import wave
from pathlib import Path

HERE = Path(__file__).resolve().parent
CODES = ["KNP", "PCC", "QS", "PRO", "PVD", "PE"]
TOPICS = ["medication", "family", "mobility", "meals"]

PHRASES = {
    "KNP": ["Your water pill lowers blood pressure.", "The dosage changed last week.",
            "Dizziness is a common symptom with that tablet."],
    "PCC": ["What matters most to you today?", "We can plan this around your routine.",
            "Would you prefer to eat by the window?"],
    "QS": ["Let's make sure you don't fall on the way.", "Keeping the rug flat will keep you safe.",
           "I'll double-check the labels with you."],
    "PRO": ["I'll share this with the care team.", "It's my responsibility to check back tomorrow.",
            "I will follow up with your doctor."],
    "PE": ["I'm really glad you told me.", "That sounds hard, I'm here with you.", "You're doing great."],
}
NEUTRAL = ["Okay, let's see.", "Mm-hm.", "Right."]
VGP_VULNERABLE = ["I feel so alone these days.", "I'm scared I'll end up in hospital again.",
                  "Nobody listens to me anymore."]
VGP_NEUTRAL = ["I suppose so.", "When is lunch?", "Fine, fine."]

RATES = {
    "aware": {"KNP": 0.25, "PCC": 0.5, "QS": 0.2, "PRO": 0.25, "PE": 0.45},
    "unaware": {"KNP": 0.45, "PCC": 0.2, "QS": 0.4, "PRO": 0.2, "PE": 0.15},
}
PVD_RATE = 0.35


def participant_line(rng, condition):
    present = [c for c in ["KNP", "PCC", "QS", "PRO", "PE"] if rng.random() < RATES[condition][c]]
    if not present:
        return rng.choice(NEUTRAL), set()
    return " ".join(rng.choice(PHRASES[c]) for c in present), set(present)


def vgp_line(rng):
    if rng.random() < PVD_RATE:
        return rng.choice(VGP_VULNERABLE), {"PVD"}
    return rng.choice(VGP_NEUTRAL), set()


def corpus_rows(rng):
    rows = []
    for condition in ["aware", "unaware"]:
        for p in range(1, 11):
            unit = f"P{p:02d}"
            conversation = f"{unit}-{condition}"
            for topic in TOPICS:
                for turn in range(rng.randint(4, 6)):
                    if turn % 2 == 0:
                        speaker, (text, codes) = unit, participant_line(rng, condition)
                    else:
                        speaker, (text, codes) = "VGP", vgp_line(rng)
                    rows.append([speaker, condition, conversation, topic, text] + [int(c in codes) for c in CODES])
    return rows


def write_corpus(rows):
    with open(HERE / "corpus.csv", "w", newline="") as f:
        w = csv.writer(f, lineterminator="\n")
        w.writerow(["subject", "condition", "conversation", "stanza", "text"] + CODES)
        w.writerows(rows)


def write_handset(rng, rows):
    sample = rng.sample(rows, 80)
    with open(HERE / "handset.csv", "w", newline="") as f:
        w = csv.writer(f, lineterminator="\n")
        w.writerow(["text"] + [f"human_{c}" for c in CODES[:5]])
        for row in sample:
            ratings = row[5:10]
            # a human rater who occasionally disagrees with the patterns
            ratings = [1 - v if rng.random() < 0.04 else v for v in ratings]
            w.writerow([row[4]] + ratings)


def write_audio():
    rate, seconds = 16000, 0.5
    (HERE / "audio").mkdir(exist_ok=True)
    with wave.open(str(HERE / "audio" / "tone.wav"), "wb") as w:
        w.setnchannels(1)
        w.setsampwidth(2)
        w.setframerate(rate)
        frames = bytearray()
        for n in range(int(rate * seconds)):
            t = n / rate
            v = 0.5 * math.sin(2 * math.pi * 440 * t) + 0.2 * math.sin(2 * math.pi * 1320 * t)
            frames += struct.pack("<h", int(round(v * 32767)))
        w.writeframes(bytes(frames))


def write_pose():
    (HERE / "pose").mkdir(exist_ok=True)
    joints, frames = 5, 45
    with open(HERE / "pose" / "reach.csv", "w", newline="") as f:
        w = csv.writer(f, lineterminator="\n")
        w.writerow(["frame"] + [f"joint_{j}_{a}" for j in range(joints) for a in "xyz"])
        for t in range(frames):
            phase = t / (frames - 1)
            row = [t]
            for j in range(joints):
                row += [f"{0.1 * j + 0.05 * math.sin(2 * math.pi * phase + j):.6f}",
                        f"{1.0 - 0.2 * j + 0.02 * phase:.6f}",
                        f"{0.3 * phase * (j == 4) + 0.01 * j:.6f}"]
            w.writerow(row)


def main():
    rng = random.Random(2026)
    rows = corpus_rows(rng)
    write_corpus(rows)
    write_handset(rng, rows)
    write_audio()
    write_pose()


if __name__ == "__main__":
    main()
