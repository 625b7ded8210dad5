import { previewVerdict, rowKey } from "../band";
import { barStyle } from "../colors";
import { store } from "../store";
import type { DisparityRow, GroupCounts, Report, Verdict } from "../types";

export interface ChartGroup {
  attribute: string;
  metric: string;
  rows: DisparityRow[];
}

// One chart per (attribute, selected metric), rows in served order.
export function chartGroups(report: Report): ChartGroup[] {
  const groups: ChartGroup[] = [];
  for (const attr of report.attributes) {
    for (const metric of report.config.metrics) {
      const rows = attr.disparities.filter((row) => row.metric === metric);
      if (rows.length > 0) {
        groups.push({ attribute: attr.attribute, metric, rows });
      }
    }
  }
  return groups;
}

export function tooltipText(row: DisparityRow, counts?: GroupCounts): string {
  const lines = [`${row.attribute}=${row.group_value}`];
  if (counts) {
    lines.push(`n=${counts.size} tp=${counts.tp} fp=${counts.fp} tn=${counts.tn} fn=${counts.fn}`);
  }
  lines.push(`rate=${row.group_rate ?? "undefined"}`);
  if (row.group_rate === null && row.group_rate_reason) {
    lines.push(`reason: ${row.group_rate_reason}`);
  }
  if (row.verdict === "reference") {
    lines.push("reference group");
  } else {
    lines.push(`ratio vs ${row.ref_group}=${row.ratio ?? row.ratio_kind}`);
  }
  return lines.join("\n");
}

function formatRate(value: number | null): string {
  if (value === null) return "—";
  return value.toFixed(4).replace(/\.?0+$/, "") || "0";
}

export function renderDashboard(root: HTMLElement): void {
  const section = document.createElement("section");
  section.className = "panel";
  const heading = document.createElement("h2");
  heading.textContent = "4. Disparity dashboard";
  const body = document.createElement("div");
  section.append(heading, body);
  root.appendChild(section);

  const sync = (): void => {
    const { report, tauPreview } = store.get();
    body.innerHTML = "";
    if (!report) {
      const hint = document.createElement("p");
      hint.className = "muted";
      hint.textContent = "Run an audit to see the dashboard.";
      body.appendChild(hint);
      return;
    }

    const banner = document.createElement("p");
    banner.className = `overall overall-${report.overall_verdict}`;
    banner.textContent =
      `Overall: ${report.overall_verdict.toUpperCase()} at tau=${report.config.tau}` +
      (tauPreview !== null ? ` (previewing tau=${tauPreview})` : "");
    body.appendChild(banner);

    const previews: Map<string, Verdict> | null =
      tauPreview === null
        ? null
        : new Map(
            report.attributes.flatMap((attr) =>
              attr.disparities.map((row) => [
                rowKey(row),
                previewVerdict(row, tauPreview, report.config.indeterminate_policy),
              ]),
            ),
          );

    for (const chart of chartGroups(report)) {
      const card = document.createElement("div");
      card.className = "chart";
      const title = document.createElement("h3");
      title.textContent = `${chart.attribute} · ${chart.metric}`;
      card.appendChild(title);

      const attrReport = report.attributes.find((a) => a.attribute === chart.attribute);

      const rates = chart.rows
        .map((row) => row.group_rate)
        .filter((rate): rate is number => rate !== null);
      const top = Math.max(...rates, 0);

      const bars = document.createElement("div");
      bars.className = "bars";
      for (const row of chart.rows) {
        const override = previews?.get(rowKey(row));
        const style = barStyle(row, override);

        const counts = attrReport?.groups.find((g) => g.group_value === row.group_value)?.counts;
        const slot = document.createElement("div");
        slot.className = "bar-slot";
        slot.title = tooltipText(row, counts);

        const bar = document.createElement("div");
        bar.className = `bar bar-${style.color}` + (style.hatched ? " bar-hatched" : "");
        const height =
          row.group_rate === null || top === 0 ? 12 : Math.max(4, Math.round((row.group_rate / top) * 120));
        bar.style.height = `${height}px`;

        const value = document.createElement("span");
        value.className = "bar-value";
        value.textContent = formatRate(row.group_rate);

        const name = document.createElement("span");
        name.className = "bar-name";
        name.textContent = row.group_value;

        slot.append(value, bar, name);
        bars.appendChild(slot);
      }
      card.appendChild(bars);
      body.appendChild(card);
    }

    if (report.diagnostics.length > 0) {
      const diag = document.createElement("details");
      const summary = document.createElement("summary");
      summary.textContent = `Diagnostics (${report.diagnostics.length})`;
      diag.appendChild(summary);
      const list = document.createElement("ul");
      for (const item of report.diagnostics) {
        const li = document.createElement("li");
        li.textContent = `${item.code}: ${item.message}`;
        list.appendChild(li);
      }
      diag.appendChild(list);
      body.appendChild(diag);
    }
  };

  sync();
  store.subscribe(sync);
}
