#!/usr/bin/env python3
"""Regenerates the synthetic sample data under data/samples.

The files are small stand-ins in the canonical CSV layout; they are not market
data. Output is deterministic for a given seed.
"""
import datetime as dt
import math
import pathlib
import random

ROOT = pathlib.Path(__file__).resolve().parent.parent / "data" / "samples"


def hours(start, days):
    t = dt.datetime.combine(start, dt.time(), tzinfo=dt.timezone.utc)
    for i in range(days * 24):
        yield t + dt.timedelta(hours=i)


def day_ahead(rng, t, base, swing, noise):
    h = t.hour
    shape = 0.6 * math.exp(-((h - 8) ** 2) / 6.0) + math.exp(-((h - 18) ** 2) / 5.0) - 0.5 * math.exp(-((h - 3) ** 2) / 6.0)
    weekend = 0.85 if t.weekday() >= 5 else 1.0
    return base * weekend + swing * shape + rng.gauss(0.0, noise)


def write(name, zone, kind, rows, drop=()):
    path = ROOT / name
    with path.open("w", newline="\n") as f:
        f.write("timestamp,price,zone,kind\n")
        for t, price in rows:
            if t in drop:
                continue
            text = price if isinstance(price, str) else f"{price:.2f}"
            f.write(f"{t:%Y-%m-%dT%H:%M}Z,{text},{zone},{kind}\n")


def main():
    ROOT.mkdir(parents=True, exist_ok=True)
    rng = random.Random(20200101)
    jan20 = dt.date(2020, 1, 1)

    fr = [(t, day_ahead(rng, t, 38.0, 22.0, 3.0)) for t in hours(jan20, 31)]
    # A windy holiday night with negative prices.
    for i, (t, _) in enumerate(fr):
        if t.day == 12 and t.hour in (2, 3, 4):
            fr[i] = (t, {2: "-5.10", 3: "-7.45", 4: "-1.02"}[t.hour])
    write("fr_day_ahead_2020-01.csv", "FR", "day_ahead_energy", fr)

    de = [(t, day_ahead(rng, t, 36.0, 25.0, 4.0)) for t in hours(jan20, 31)]
    utc = dt.timezone.utc
    drop = {dt.datetime(2020, 1, 15, h, tzinfo=utc) for h in (1, 2, 3)}
    drop |= {dt.datetime(2020, 1, 20, h, tzinfo=utc) for h in range(6, 12)}
    write("de_lu_day_ahead_2020-01.csv", "DE-LU", "day_ahead_energy", de, drop)

    gb = [(t, day_ahead(rng, t, 34.0, 35.0, 6.0)) for t in hours(jan20, 31)]
    write("gb_day_ahead_2020-01.csv", "GB", "day_ahead_energy", gb)

    no = [(t, day_ahead(rng, t, 24.0, 4.0, 0.8)) for t in hours(jan20, 31)]
    write("no1_day_ahead_2020-01.csv", "NO1", "day_ahead_energy", no)

    # FCR capacity is auctioned in 4-hour products; resampled to hours here.
    fr_cap, level = [], 9.0
    for t in hours(jan20, 31):
        if t.hour % 4 == 0:
            level = max(2.0, rng.gauss(9.5, 2.0))
        fr_cap.append((t, level))
    write("fr_fcr_capacity_2020-01.csv", "FR", "reserve_capacity", fr_cap)

    jan21 = dt.date(2021, 1, 1)
    dk2 = [(t, day_ahead(rng, t, 45.0, 20.0, 4.0)) for t in hours(jan21, 31)]
    write("dk2_day_ahead_2021-01.csv", "DK2", "day_ahead_energy", dk2)
    dk2_cap = [(t, max(5.0, rng.gauss(42.0, 12.0))) for t in hours(jan21, 31)]
    write("dk2_fcr_n_capacity_2021-01.csv", "DK2", "reserve_capacity", dk2_cap)

    raw = ROOT / "raw"
    raw.mkdir(exist_ok=True)
    with (raw / "entsoe_de_lu_2020-01-01.csv").open("w", newline="\n") as f:
        f.write('"MTU (CET/CEST)","Day-ahead Price [EUR/MWh]","Currency","BZN|DE-LU"\n')
        for t in hours(jan20, 1):
            local = t + dt.timedelta(hours=1)
            end = local + dt.timedelta(hours=1)
            price = f"{day_ahead(rng, t, 36.0, 25.0, 4.0):.2f}" if t.hour != 5 else ""
            f.write(f'"{local:%d.%m.%Y %H:%M} - {end:%d.%m.%Y %H:%M}","{price}","EUR","BZN|DE-LU"\n')


if __name__ == "__main__":
    main()
