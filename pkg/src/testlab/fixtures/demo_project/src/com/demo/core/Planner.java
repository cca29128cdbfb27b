package com.demo.core;

import com.demo.model.Circle;
import com.demo.model.Point;
import com.demo.model.Rect;
import com.demo.model.Shape;
import com.demo.util.MathOps;

public class Planner {
    private Registry registry;
    private int budget;

    public Planner(Registry registry, int budget) {
        this.registry = registry;
        this.budget = budget;
    }

    public int place(Shape[] candidates) {
        int placed = 0;
        outer:
        for (int i = 0; i < candidates.length; i++) {
            Shape s = candidates[i];
            if (s == null) {
                continue;
            }
            double cost = s.area();
            if (cost > budget) {
                break outer;
            }
            for (int attempt = 0; attempt < 3; attempt++) {
                if (tryPlace(s, attempt)) {
                    placed++;
                    continue outer;
                }
            }
        }
        return placed;
    }

    private boolean tryPlace(Shape s, int attempt) {
        double jitter = MathOps.clamp(attempt * 0.5, 0.0, 1.0);
        Point o = s.getOrigin();
        if (o == null) {
            return false;
        }
        double score = o.getX() + o.getY() + jitter;
        return score >= 0;
    }

    public Shape bestFit(double target) {
        Shape best = null;
        double gap = Double.MAX_VALUE;
        Circle probe = new Circle(new Point(), 1.0);
        Rect fallback = new Rect(new Point(), 1.0, 1.0);
        Shape[] pool = { probe, fallback };
        for (int i = 0; i < pool.length; i++) {
            double d = pool[i].area() - target;
            if (d < 0) {
                d = -d;
            }
            if (d < gap) {
                gap = d;
                best = pool[i];
            }
        }
        return best;
    }
}
