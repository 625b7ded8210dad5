// Bar coloring is a straight read of the report verdict; nothing here
// recomputes a rate or a ratio.

import type { DisparityRow, Verdict } from "./types";

export type BarColor = "green" | "red" | "gray" | "slate";

export const VERDICT_COLOR: Record<Verdict, BarColor> = {
  pass: "green",
  fail: "red",
  indeterminate: "gray",
  reference: "slate",
};

export interface BarStyle {
  color: BarColor;
  // Undefined rates draw hatched with the server's reason as the note.
  hatched: boolean;
  note: string | null;
}

export function barStyle(row: DisparityRow, verdictOverride?: Verdict): BarStyle {
  const verdict = verdictOverride ?? row.verdict;
  const undefinedRate = row.group_rate === null;
  return {
    color: VERDICT_COLOR[verdict],
    hatched: undefinedRate,
    note: undefinedRate ? row.group_rate_reason : null,
  };
}
