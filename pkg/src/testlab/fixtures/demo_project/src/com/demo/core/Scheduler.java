package com.demo.core;

import com.demo.util.Stats;

public class Scheduler {
    public static final int MAX_QUEUE = 64;

    private Task[] queue;
    private int head;
    private int tail;
    private Stats timing;

    public Scheduler() {
        queue = new Task[MAX_QUEUE];
        head = 0;
        tail = 0;
        timing = new Stats(16);
    }

    public boolean submit(Task t) {
        int next = (tail + 1) % queue.length;
        if (next == head || t == null) {
            return false;
        }
        queue[tail] = t;
        tail = next;
        return true;
    }

    public int drain(int budget) {
        int executed = 0;
        while (head != tail && budget > 0) {
            Task t = queue[head];
            queue[head] = null;
            head = (head + 1) % queue.length;
            int cost;
            try {
                cost = t.run(budget);
            } catch (RuntimeException e) {
                cost = budget;
            }
            timing.add(cost);
            budget -= cost > 0 ? cost : 1;
            executed++;
        }
        return executed;
    }

    public double peakCost() {
        return timing.max();
    }

    public boolean isEmpty() {
        return head == tail;
    }
}
